#pragma once

// Heavy-path decomposition indexes.
//
// Chains follow the heavy child (largest subtree, leftmost on ties). Their
// weights are laid out head-first, chain after chain in preorder of the heads,
// in a string C held by a wavelet tree. A path query becomes O(lg n)
// intervals of C.
//
// The succinct layout stores the tree T, the transformed tree T' (non-heads
// hang off their heads, heads hang off the head of their original parent)
// and B = 1 0^{rc_1} 1 0^{rc_2} ... 1 0^{rc_n}, where rc_x is the length of
// the chain headed by x (0 for non-heads). The explicit layout stores the
// derived arrays directly.

#include <vector>

#include "treepath/bptree.hpp"
#include "treepath/path_index.hpp"
#include "treepath/wavelet.hpp"

namespace treepath {

struct ChainInterval {
  std::size_t l = 1, r = 0;  // inclusive positions in C
  NodeId deep = kNoNode;     // node stored at position r
  friend bool operator==(const ChainInterval&, const ChainInterval&) = default;
};

// Decomposition computed with plain arrays; used to build both layouts.
struct HeavyPaths {
  explicit HeavyPaths(const WeightedTree& t);

  std::vector<uint32_t> ref_count;  // rc_x
  std::vector<NodeId> head;         // ref(x)
  std::vector<NodeId> tparent;      // parent in T', 0 for the root
  std::vector<uint32_t> pos;        // position of x in C
  std::vector<Weight> chain_weights;  // C, 0-based storage of positions 1..n

  RawBits ref_bits() const;  // B
};

// Impl provides lca, ref, pos, parent, depth, node_above(deep, up) and wavelet().
template <class Impl>
class HpdQueries : public PathIndex {
 public:
  std::size_t path_length(NodeId x, NodeId y) const override {
    NodeId z = impl().lca(x, y);
    return impl().depth(x) + impl().depth(y) - 2 * impl().depth(z) + 1;
  }

  // Intervals of C covering the path x..y exactly once each.
  void decompose(NodeId x, NodeId y, std::vector<ChainInterval>& out) const {
    out.clear();
    NodeId z = impl().lca(x, y);
    NodeId rz = impl().ref(z);
    NodeId ends[2] = {x, y};
    for (NodeId& cur : ends) {
      for (NodeId h = impl().ref(cur); h != rz; h = impl().ref(cur)) {
        out.push_back(ChainInterval{impl().pos(h), impl().pos(cur), cur});
        cur = impl().parent(h);
      }
    }
    std::size_t pz = impl().pos(z);
    out.push_back(ChainInterval{pz, impl().pos(ends[0]), ends[0]});
    std::size_t py = impl().pos(ends[1]);
    if (py > pz) out.push_back(ChainInterval{pz + 1, py, ends[1]});
  }
  std::vector<ChainInterval> decompose(NodeId x, NodeId y) const {
    std::vector<ChainInterval> out;
    decompose(x, y, out);
    return out;
  }

  Weight select(NodeId x, NodeId y, std::size_t k) const override {
    thread_local std::vector<ChainInterval> chains;
    thread_local std::vector<PosInterval> ivs;
    decompose(x, y, chains);
    ivs.clear();
    for (const auto& c : chains) ivs.push_back(PosInterval{c.l, c.r});
    return impl().wavelet().quantile_multi(ivs, k);
  }

  std::size_t count(NodeId x, NodeId y, Weight a, Weight b) const override {
    thread_local std::vector<ChainInterval> chains;
    decompose(x, y, chains);
    std::size_t total = 0;
    for (const auto& c : chains) total += impl().wavelet().count_2d(c.l, c.r, a, b);
    return total;
  }

  void report(NodeId x, NodeId y, Weight a, Weight b, std::vector<Hit>& out) const override {
    thread_local std::vector<ChainInterval> chains;
    thread_local std::vector<std::pair<std::size_t, Weight>> found;
    decompose(x, y, chains);
    for (const auto& c : chains) {
      found.clear();
      impl().wavelet().report_2d(c.l, c.r, a, b, found);
      for (auto [p, w] : found) out.push_back(Hit{impl().node_above(c.deep, static_cast<uint32_t>(c.r - p)), w});
    }
  }

 private:
  const Impl& impl() const { return static_cast<const Impl&>(*this); }
};

template <class Bits>
class HpdSuccinct : public HpdQueries<HpdSuccinct<Bits>> {
 public:
  explicit HpdSuccinct(const WeightedTree& t);

  std::string_view name() const override;
  std::size_t nodes() const override { return tree_.nodes(); }
  Weight sigma() const override { return wt_.sigma(); }
  std::size_t size_in_bits() const override {
    return tree_.size_in_bits() + transformed_.size_in_bits() + refs_.size_in_bits() + wt_.size_in_bits();
  }

  std::size_t ref_count(NodeId x) const {
    std::size_t next = x < nodes() ? refs_.select(true, x + 1) : refs_.size() + 1;
    return refs_.rank(false, next) - refs_.rank(false, refs_.select(true, x));
  }
  bool is_head(NodeId x) const {
    std::size_t p = refs_.select(true, x);
    return p < refs_.size() && !refs_.get(p + 1);
  }
  NodeId ref(NodeId x) const { return is_head(x) ? x : *transformed_.parent(x); }
  std::size_t pos(NodeId x) const {
    NodeId h = ref(x);
    return 1 + refs_.select(true, h) - h + tree_.depth(x) - tree_.depth(h);
  }
  NodeId lca(NodeId x, NodeId y) const { return *tree_.lca(x, y); }
  NodeId parent(NodeId x) const { return *tree_.parent(x); }
  uint32_t depth(NodeId x) const { return tree_.depth(x); }
  NodeId node_above(NodeId deep, uint32_t up) const { return tree_.level_anc(deep, up); }
  const WaveletTree<Bits>& wavelet() const { return wt_; }
  const Bits& ref_bits() const { return refs_; }
  std::string transformed_bp() const { return transformed_.to_string(); }

 private:
  BpTree<Bits> tree_;
  BpTree<Bits> transformed_;
  Bits refs_;
  WaveletTree<Bits> wt_;
};

class HpdExplicit : public HpdQueries<HpdExplicit> {
 public:
  explicit HpdExplicit(const WeightedTree& t);

  std::string_view name() const override { return "hpd-plain"; }
  std::size_t nodes() const override { return ref_.size() - 1; }
  Weight sigma() const override { return wt_.sigma(); }
  std::size_t size_in_bits() const override;

  NodeId ref(NodeId x) const { return ref_[x]; }
  std::size_t pos(NodeId x) const { return pos_[x]; }
  NodeId parent(NodeId x) const { return parent_[x]; }
  uint32_t depth(NodeId x) const { return depth_[x]; }
  // Climbs chains from the deeper head until both ends share a chain.
  NodeId lca(NodeId x, NodeId y) const {
    while (ref_[x] != ref_[y]) {
      if (depth_[ref_[x]] > depth_[ref_[y]]) {
        x = parent_[ref_[x]];
      } else {
        y = parent_[ref_[y]];
      }
    }
    return depth_[x] < depth_[y] ? x : y;
  }
  NodeId node_above(NodeId deep, uint32_t up) const { return node_at_[pos_[deep] - up]; }
  const WaveletTree<ExplicitBits>& wavelet() const { return wt_; }

 private:
  std::vector<NodeId> ref_;
  std::vector<uint32_t> pos_;
  std::vector<NodeId> parent_;
  std::vector<uint32_t> depth_;
  std::vector<NodeId> node_at_;  // C position -> node
  WaveletTree<ExplicitBits> wt_;
};

extern template class HpdSuccinct<PlainBitVector>;
extern template class HpdSuccinct<RrrBitVector>;

}  // namespace treepath
