#include "treepath/naive.hpp"

#include <bit>

namespace treepath {

ExplicitTopology::ExplicitTopology(const WeightedTree& t)
    : n(t.size()), sigma(t.sigma()), parent(t.parents()), depth(t.size() + 1), weight(t.weights()) {
  child_start.assign(n + 2, 0);
  for (NodeId x = 2; x <= n; ++x) ++child_start[parent[x] + 1];
  for (std::size_t i = 1; i < child_start.size(); ++i) child_start[i] += child_start[i - 1];
  child_list.resize(n > 0 ? n - 1 : 0);
  std::vector<uint32_t> fill(child_start.begin(), child_start.end() - 1);
  for (NodeId x = 2; x <= n; ++x) child_list[fill[parent[x]]++] = x;
  for (NodeId x = 2; x <= n; ++x) depth[x] = depth[parent[x]] + 1;
}

std::size_t ExplicitTopology::size_in_bits() const {
  return 32 * (child_start.size() + child_list.size() + parent.size() + depth.size() + weight.size()) + 128;
}

NodeId NaiveExplicit::lca(NodeId x, NodeId y) const {
  const auto& par = topo_.parent;
  const auto& dep = topo_.depth;
  while (dep[x] > dep[y]) x = par[x];
  while (dep[y] > dep[x]) y = par[y];
  while (x != y) {
    x = par[x];
    y = par[y];
  }
  return x;
}

NaiveLca::NaiveLca(const WeightedTree& t) : topo_(t) {
  std::size_t n = topo_.n;
  euler_.reserve(2 * n - 1);
  first_.assign(n + 1, 0);
  // iterative DFS: a node is emitted on entry and again after each child
  std::vector<std::pair<NodeId, uint32_t>> stack{{1, 0}};
  euler_.push_back(1);
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    uint32_t deg = topo_.child_start[v + 1] - topo_.child_start[v];
    if (next < deg) {
      NodeId c = topo_.child_list[topo_.child_start[v] + next++];
      first_[c] = static_cast<uint32_t>(euler_.size());
      euler_.push_back(c);
      stack.emplace_back(c, 0);
    } else {
      stack.pop_back();
      if (!stack.empty()) euler_.push_back(stack.back().first);
    }
  }

  std::size_t m = euler_.size();
  unsigned levels = std::bit_width(m);
  table_.resize(levels);
  table_[0] = euler_;
  for (unsigned k = 1; k < levels; ++k) {
    std::size_t len = m - (std::size_t{1} << k) + 1;
    table_[k].resize(len);
    const auto& prev = table_[k - 1];
    std::size_t half = std::size_t{1} << (k - 1);
    for (std::size_t i = 0; i < len; ++i) {
      NodeId a = prev[i], b = prev[i + half];
      table_[k][i] = topo_.depth[a] <= topo_.depth[b] ? a : b;
    }
  }
}

NodeId NaiveLca::sparse_lca(NodeId x, NodeId y) const {
  std::size_t l = first_[x], r = first_[y];
  if (l > r) std::swap(l, r);
  unsigned k = std::bit_width(r - l + 1) - 1;
  NodeId a = table_[k][l], b = table_[k][r + 1 - (std::size_t{1} << k)];
  return topo_.depth[a] <= topo_.depth[b] ? a : b;
}

std::size_t NaiveLca::size_in_bits() const {
  std::size_t s = topo_.size_in_bits() + 32 * (euler_.size() + first_.size());
  for (const auto& lvl : table_) s += 32 * lvl.size();
  return s;
}

NaiveSuccinct::NaiveSuccinct(const WeightedTree& t)
    : bp_(bp_from_parents(t.parents())), weights_(t.size(), ceil_log2(t.sigma())), sigma_(t.sigma()) {
  for (NodeId x = 1; x <= t.size(); ++x) weights_.set(x - 1, t.weight(x) - 1);
}

}  // namespace treepath
