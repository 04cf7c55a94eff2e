#include "treepath/hpd_index.hpp"

#include <type_traits>

namespace treepath {

HeavyPaths::HeavyPaths(const WeightedTree& t) {
  const std::size_t n = t.size();
  std::vector<uint32_t> size(n + 1, 1);
  for (NodeId x = static_cast<NodeId>(n); x >= 2; --x) size[t.parent(x)] += size[x];

  std::vector<NodeId> heavy(n + 1, kNoNode);
  for (NodeId x = 1; x <= n; ++x) {
    uint32_t best = 0;
    for (NodeId c : t.children(x))
      if (size[c] > best) {
        best = size[c];
        heavy[x] = c;
      }
  }

  head.assign(n + 1, kNoNode);
  ref_count.assign(n + 1, 0);
  tparent.assign(n + 1, kNoNode);
  for (NodeId x = 1; x <= n; ++x) {
    NodeId p = t.parent(x);
    head[x] = (p != kNoNode && heavy[p] == x) ? head[p] : x;
    ++ref_count[head[x]];
    if (p != kNoNode) tparent[x] = head[x] == x ? head[p] : head[x];
  }

  std::vector<uint32_t> offset(n + 1, 0);
  uint32_t run = 1;
  for (NodeId x = 1; x <= n; ++x) {
    offset[x] = run;
    run += ref_count[x];
  }
  pos.assign(n + 1, 0);
  chain_weights.assign(n, 0);
  for (NodeId x = 1; x <= n; ++x) {
    pos[x] = offset[head[x]] + t.depth(x) - t.depth(head[x]);
    chain_weights[pos[x] - 1] = t.weight(x);
  }
}

RawBits HeavyPaths::ref_bits() const {
  RawBits b;
  for (std::size_t x = 1; x < ref_count.size(); ++x) {
    b.push_back(true);
    for (uint32_t k = 0; k < ref_count[x]; ++k) b.push_back(false);
  }
  return b;
}

template <class Bits>
HpdSuccinct<Bits>::HpdSuccinct(const WeightedTree& t) {
  HeavyPaths hp(t);
  tree_ = BpTree<Bits>(bp_from_parents(t.parents()));
  transformed_ = BpTree<Bits>(bp_from_parents(hp.tparent));
  refs_ = Bits(hp.ref_bits());
  wt_ = WaveletTree<Bits>(hp.chain_weights, t.sigma());
}

template <class Bits>
std::string_view HpdSuccinct<Bits>::name() const {
  if constexpr (std::is_same_v<Bits, RrrBitVector>) return "hpd-rrr";
  return "hpd-un";
}

template class HpdSuccinct<PlainBitVector>;
template class HpdSuccinct<RrrBitVector>;

HpdExplicit::HpdExplicit(const WeightedTree& t) : parent_(t.parents()) {
  HeavyPaths hp(t);
  ref_ = std::move(hp.head);
  pos_ = std::move(hp.pos);
  depth_.assign(t.size() + 1, 0);
  node_at_.assign(t.size() + 1, kNoNode);
  for (NodeId x = 1; x <= t.size(); ++x) {
    depth_[x] = t.depth(x);
    node_at_[pos_[x]] = x;
  }
  wt_ = WaveletTree<ExplicitBits>(hp.chain_weights, t.sigma());
}

std::size_t HpdExplicit::size_in_bits() const {
  return 32 * (ref_.size() + pos_.size() + parent_.size() + depth_.size() + node_at_.size()) + wt_.size_in_bits();
}

}  // namespace treepath
