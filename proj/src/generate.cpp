#include "treepath/generate.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace treepath {

TreeShape parse_shape(std::string_view s) {
  if (s == "uniform_attach") return TreeShape::UniformAttach;
  if (s == "long_paths") return TreeShape::LongPaths;
  throw std::invalid_argument("unknown shape '" + std::string(s) + "'");
}

std::string_view shape_name(TreeShape s) {
  return s == TreeShape::UniformAttach ? "uniform_attach" : "long_paths";
}

namespace {

// Parent array of a random recursive tree in insertion order, relabelled so
// that ids are a preorder (children keep insertion order).
std::vector<NodeId> random_preorder_parents(std::size_t n, TreeShape shape, std::mt19937_64& rng) {
  std::vector<NodeId> par(n + 1, kNoNode);
  std::bernoulli_distribution chain(0.85);
  for (std::size_t i = 2; i <= n; ++i) {
    if (shape == TreeShape::LongPaths && chain(rng)) {
      par[i] = static_cast<NodeId>(i - 1);
    } else {
      par[i] = static_cast<NodeId>(std::uniform_int_distribution<std::size_t>(1, i - 1)(rng));
    }
  }
  std::vector<uint32_t> start(n + 2, 0);
  for (std::size_t i = 2; i <= n; ++i) ++start[par[i] + 1];
  for (std::size_t i = 1; i <= n + 1; ++i) start[i] += start[i - 1];
  std::vector<NodeId> kids(n > 0 ? n - 1 : 0);
  std::vector<uint32_t> fill(start.begin(), start.end() - 1);
  for (std::size_t i = 2; i <= n; ++i) kids[fill[par[i]]++] = static_cast<NodeId>(i);

  std::vector<NodeId> label(n + 1, 0);
  std::vector<NodeId> stack{1};
  NodeId next = 0;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    label[v] = ++next;
    for (uint32_t k = start[v + 1]; k-- > start[v];) stack.push_back(kids[k]);
  }
  std::vector<NodeId> out(n + 1, kNoNode);
  for (std::size_t i = 2; i <= n; ++i) out[label[i]] = label[par[i]];
  return out;
}

}  // namespace

WeightedTree gen_tree(std::size_t n, Weight sigma, TreeShape shape, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_tree: n must be >= 1");
  if (sigma < 1) throw std::invalid_argument("gen_tree: sigma must be >= 1");
  std::mt19937_64 rng(seed);
  auto parent = random_preorder_parents(n, shape, rng);
  std::uniform_int_distribution<Weight> wd(1, sigma);
  std::vector<Weight> w(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) w[i] = wd(rng);
  return WeightedTree(std::move(parent), std::move(w), sigma);
}

WeightedTree gen_tree_with_weights(std::size_t n, TreeShape shape, uint64_t seed,
                                   const std::vector<Weight>& weights, Weight sigma) {
  if (n < 1 || weights.size() != n) throw std::invalid_argument("gen_tree_with_weights: bad size");
  std::mt19937_64 rng(seed);
  auto parent = random_preorder_parents(n, shape, rng);
  std::vector<Weight> w(n + 1, 0);
  std::copy(weights.begin(), weights.end(), w.begin() + 1);
  return WeightedTree(std::move(parent), std::move(w), sigma);
}

QueryKind parse_kind(std::string_view s) {
  if (s == "median") return QueryKind::Median;
  if (s == "count") return QueryKind::Count;
  if (s == "report") return QueryKind::Report;
  throw std::invalid_argument("unknown query kind '" + std::string(s) + "'");
}

std::string_view kind_name(QueryKind k) {
  switch (k) {
    case QueryKind::Median: return "median";
    case QueryKind::Count: return "count";
    case QueryKind::Report: return "report";
  }
  return "?";
}

std::vector<PathQuery> gen_queries(const WeightedTree& t, QueryKind kind, uint32_t k_factor, std::size_t count,
                                   uint64_t seed) {
  if (k_factor < 1) throw std::invalid_argument("gen_queries: K must be >= 1");
  std::size_t n = t.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeId> node(1, static_cast<NodeId>(n));
  std::vector<Weight> sorted(t.weights().begin() + 1, t.weights().end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<PathQuery> out;
  out.reserve(count);
  for (std::size_t q = 0; q < count; ++q) {
    PathQuery pq;
    pq.kind = kind;
    pq.x = node(rng);
    pq.y = node(rng);
    if (kind != QueryKind::Median) {
      std::size_t i = std::uniform_int_distribution<std::size_t>(1, n)(rng);
      std::size_t span = (n - i + k_factor - 1) / k_factor;
      std::size_t j = std::uniform_int_distribution<std::size_t>(i, std::min(n, i + span))(rng);
      pq.a = sorted[i - 1];
      pq.b = sorted[j - 1];
    }
    out.push_back(pq);
  }
  return out;
}

double expected_rank_coverage(std::size_t n, uint32_t k_factor) {
  if (n == 0 || k_factor < 1) return 0;
  double total = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t span = (n - i + k_factor - 1) / k_factor;
    std::size_t choices = std::min(n, i + span) - i + 1;
    total += static_cast<double>(choices + 1) / 2.0;  // mean of j - i + 1
  }
  return total / (static_cast<double>(n) * static_cast<double>(n));
}

}  // namespace treepath
