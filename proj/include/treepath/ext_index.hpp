#pragma once

// Tree-extraction indexes.
//
// The weight range [1..sigma] is halved recursively; depth d of the
// hierarchy holds 2^d extracted trees, tree j at depth d has children 2j and
// 2j+1 at depth d+1 (lighter and heavier half). Every extracted tree gets a
// super root whose children are the roots of the extracted forest, so views
// that would be "none" land on the super root and depth differences still
// work. A tree whose range is a single weight passes all of its nodes to
// child 0; child 1 is then empty (super root only).
//
// Per depth d the succinct layout keeps
//   S_d  BP of all trees of depth d, concatenated in order of j
//   B_d  type bit of every real node (0: lighter half), d < D
// Real nodes are numbered 1..n per depth in tree order ("real index"); in S_d
// the node with real index r in tree j has id r + j + 1, the super root of
// tree j has id s_j + j where s_j is the tree's first real index.

#include <functional>
#include <type_traits>
#include <string>
#include <vector>

#include "treepath/bptree.hpp"
#include "treepath/path_index.hpp"

namespace treepath {

struct ExtContext {
  unsigned d = 0;
  std::size_t j = 0;
  std::size_t s = 1;    // first real index of the tree
  std::size_t cnt = 0;  // real nodes in the tree
  Weight lo = 1, hi = 0;  // lo > hi marks an empty range

  bool empty_range() const { return lo > hi; }
  NodeId super_root() const { return static_cast<NodeId>(s + j); }
  NodeId id_of(std::size_t r) const { return static_cast<NodeId>(r + j + 1); }
  std::size_t real_of(NodeId x) const { return x - j - 1; }
};

// One depth of the extraction, as produced by extract_levels.
struct ExtLevel {
  unsigned d = 0;
  std::vector<NodeId> parent;   // S ids, 0 for super roots
  RawBits types;                // bit r-1 for real index r; empty at the last depth
  std::vector<ExtContext> trees;
  // Only filled when maps are requested:
  std::vector<NodeId> view[2];  // S_d id -> S_{d+1} id of its t-view, d < D
  std::vector<NodeId> source;   // S_d id -> S_{d-1} id, 0 for super roots, d > 0
};

// Runs the levelwise extraction of t and hands every depth 0..D to sink.
void extract_levels(const WeightedTree& t, bool with_maps, const std::function<void(ExtLevel&&)>& sink);

// Query algorithms shared by the succinct and explicit layouts.
//
// Impl provides root_context(), child_context(ctx, t), view(parent, child, v, t),
// depth(d, x), parent_in(d, x), outermost(path, x), weight_at(path, x),
// top_lca(u, v) and top_weight(z); ids are S ids throughout.
template <class Impl>
class ExtQueries : public PathIndex {
 public:
  std::size_t path_length(NodeId x, NodeId y) const override {
    NodeId z = impl().top_lca(x + 1, y + 1);
    return impl().depth(0, x + 1) + impl().depth(0, y + 1) - 2 * impl().depth(0, z) + 1;
  }

  Weight select(NodeId x, NodeId y, std::size_t k) const override {
    NodeId u = x + 1, v = y + 1;
    NodeId z = impl().top_lca(u, v);
    if (k >= impl().depth(0, u) + impl().depth(0, v) - 2 * impl().depth(0, z) + 1)
      throw std::out_of_range("select: rank exceeds path length");
    Weight w = impl().top_weight(z);
    ExtContext ctx = impl().root_context();
    while (ctx.lo < ctx.hi) {
      ExtContext c0 = impl().child_context(ctx, false);
      NodeId u0 = impl().view(ctx, c0, u, false), v0 = impl().view(ctx, c0, v, false),
             z0 = impl().view(ctx, c0, z, false);
      std::size_t lighter = impl().depth(c0.d, u0) + impl().depth(c0.d, v0) - 2 * impl().depth(c0.d, z0) +
                            (c0.lo <= w && w <= c0.hi);
      if (k < lighter) {
        ctx = c0;
        u = u0, v = v0, z = z0;
      } else {
        k -= lighter;
        ExtContext c1 = impl().child_context(ctx, true);
        u = impl().view(ctx, c1, u, true), v = impl().view(ctx, c1, v, true), z = impl().view(ctx, c1, z, true);
        ctx = c1;
      }
    }
    return ctx.lo;
  }

  Weight median(NodeId x, NodeId y) const override { return select(x, y, path_length(x, y) / 2); }

  std::size_t count(NodeId x, NodeId y, Weight a, Weight b) const override {
    NodeId u = x + 1, v = y + 1;
    NodeId z = impl().top_lca(u, v);
    Weight w = impl().top_weight(z);
    return count_rec(impl().root_context(), u, v, z, w, a, b);
  }

  void report(NodeId x, NodeId y, Weight a, Weight b, std::vector<Hit>& out) const override {
    NodeId u = x + 1, v = y + 1;
    NodeId z = impl().top_lca(u, v);
    Weight w = impl().top_weight(z);
    if (a <= w && w <= b) out.push_back(Hit{z - 1, w});
    std::vector<ExtContext> path{impl().root_context()};
    report_rec(path, u, v, z, a, b, out);
  }

 private:
  const Impl& impl() const { return static_cast<const Impl&>(*this); }

  std::size_t count_rec(const ExtContext& ctx, NodeId u, NodeId v, NodeId z, Weight w, Weight a, Weight b) const {
    if (ctx.empty_range() || ctx.hi < a || ctx.lo > b) return 0;
    if (a <= ctx.lo && ctx.hi <= b)
      return impl().depth(ctx.d, u) + impl().depth(ctx.d, v) - 2 * impl().depth(ctx.d, z) + (ctx.lo <= w && w <= ctx.hi);
    std::size_t total = 0;
    for (bool t : {false, true}) {
      ExtContext c = impl().child_context(ctx, t);
      if (c.empty_range() || c.hi < a || c.lo > b) continue;
      total += count_rec(c, impl().view(ctx, c, u, t), impl().view(ctx, c, v, t), impl().view(ctx, c, z, t), w, a, b);
    }
    return total;
  }

  // The LCA itself is reported by the caller, so only the two open sides
  // below z are enumerated here.
  void report_rec(std::vector<ExtContext>& path, NodeId u, NodeId v, NodeId z, Weight a, Weight b,
                  std::vector<Hit>& out) const {
    const ExtContext ctx = path.back();
    if (ctx.empty_range() || ctx.hi < a || ctx.lo > b) return;
    if (a <= ctx.lo && ctx.hi <= b) {
      for (NodeId side : {u, v}) {
        for (NodeId cur = side; cur != z; cur = impl().parent_in(ctx.d, cur))
          out.push_back(Hit{impl().outermost(path, cur) - 1, impl().weight_at(path, cur)});
      }
      return;
    }
    for (bool t : {false, true}) {
      ExtContext c = impl().child_context(ctx, t);
      if (c.empty_range() || c.hi < a || c.lo > b) continue;
      NodeId ut = impl().view(ctx, c, u, t), vt = impl().view(ctx, c, v, t), zt = impl().view(ctx, c, z, t);
      if (ut == zt && vt == zt) continue;
      path.push_back(c);
      report_rec(path, ut, vt, zt, a, b, out);
      path.pop_back();
    }
  }
};

template <class Bits>
class ExtSuccinct : public ExtQueries<ExtSuccinct<Bits>> {
 public:
  explicit ExtSuccinct(const WeightedTree& t);

  std::string_view name() const override;
  std::size_t nodes() const override { return n_; }
  Weight sigma() const override { return sigma_; }
  std::size_t size_in_bits() const override;

  unsigned levels() const { return depth_limit_; }
  ExtContext root_context() const { return ExtContext{0, 0, 1, n_, 1, sigma_}; }
  ExtContext child_context(const ExtContext& ctx, bool t) const;
  ExtContext context(unsigned d, std::size_t j) const;
  // BP string of tree j at depth d, super root included.
  std::string tree_bp(unsigned d, std::size_t j) const;

  // S_{d+1} id of the t-view of node v (an S_d id of tree ctx).
  NodeId view(const ExtContext& ctx, const ExtContext& child, NodeId v, bool t) const;
  NodeId view_of(const ExtContext& ctx, NodeId v, bool t) const { return view(ctx, child_context(ctx, t), v, t); }
  // S_d id of the node whose t-view in child tree is the real node x.
  NodeId source_of(const ExtContext& ctx, bool t, NodeId x) const;

  uint32_t depth(unsigned d, NodeId x) const { return s_[d].depth(x); }
  NodeId parent_in(unsigned d, NodeId x) const { return *s_[d].parent(x); }
  NodeId outermost(const std::vector<ExtContext>& path, NodeId x) const;
  Weight weight_at(const std::vector<ExtContext>& path, NodeId x) const;
  NodeId top_lca(NodeId u, NodeId v) const { return *s_[0].lca(u, v); }
  Weight top_weight(NodeId z) const { return weight_from(root_context(), z - 1); }

 private:
  // Weight of the real node r of tree ctx, found by following its types down.
  Weight weight_from(ExtContext ctx, std::size_t r) const;
  std::size_t child_real(const ExtContext& ctx, const ExtContext& child, std::size_t r, bool t) const {
    return child.s + b_[ctx.d].rank(t, r) - b_[ctx.d].rank(t, ctx.s);
  }

  std::vector<BpTree<Bits>> s_;
  std::vector<Bits> b_;
  std::size_t n_ = 0;
  Weight sigma_ = 1;
  unsigned depth_limit_ = 0;
};

// Views, depths, parents and sources stored as plain arrays per depth.
class ExtExplicit : public ExtQueries<ExtExplicit> {
 public:
  explicit ExtExplicit(const WeightedTree& t);

  std::string_view name() const override { return "ext-plain"; }
  std::size_t nodes() const override { return n_; }
  Weight sigma() const override { return sigma_; }
  std::size_t size_in_bits() const override;

  unsigned levels() const { return depth_limit_; }
  ExtContext root_context() const { return ExtContext{0, 0, 1, n_, 1, sigma_}; }
  ExtContext child_context(const ExtContext& ctx, bool t) const;

  NodeId view(const ExtContext& ctx, const ExtContext&, NodeId v, bool t) const { return levels_[ctx.d].view[t][v]; }
  uint32_t depth(unsigned d, NodeId x) const { return levels_[d].depth[x]; }
  NodeId parent_in(unsigned d, NodeId x) const { return levels_[d].parent[x]; }
  NodeId outermost(const std::vector<ExtContext>& path, NodeId x) const;
  Weight weight_at(const std::vector<ExtContext>& path, NodeId x) const { return weight_[outermost(path, x) - 1]; }
  NodeId top_lca(NodeId u, NodeId v) const { return *top_.lca(u, v); }
  Weight top_weight(NodeId z) const { return weight_[z - 1]; }

 private:
  struct Level {
    std::vector<NodeId> view[2];
    std::vector<uint32_t> depth;
    std::vector<NodeId> parent;
    std::vector<NodeId> source;
  };
  std::vector<Level> levels_;
  BpTree<PlainBitVector> top_;
  std::vector<Weight> weight_;  // by original id, slot 0 unused
  std::size_t n_ = 0;
  Weight sigma_ = 1;
  unsigned depth_limit_ = 0;
};

extern template class ExtSuccinct<PlainBitVector>;
extern template class ExtSuccinct<RrrBitVector>;

}  // namespace treepath
