#include "treepath/ext_index.hpp"

#include <stdexcept>

namespace treepath {

namespace {

// Deepest supported hierarchy; each depth d carries 2^d super roots.
constexpr unsigned kMaxDepth = 26;

// Child ranges: [lo, mid] and [mid+1, hi]; a single weight passes to child 0.
void split_range(const ExtContext& ctx, bool t, ExtContext& child) {
  child.d = ctx.d + 1;
  child.j = 2 * ctx.j + t;
  if (ctx.empty_range()) {
    child.lo = ctx.lo;
    child.hi = ctx.hi;
  } else if (ctx.lo == ctx.hi) {
    child.lo = t ? ctx.hi + 1 : ctx.lo;
    child.hi = ctx.hi;
  } else {
    Weight mid = ctx.lo + (ctx.hi - ctx.lo) / 2;
    child.lo = t ? mid + 1 : ctx.lo;
    child.hi = t ? ctx.hi : mid;
  }
}

unsigned hierarchy_depth(Weight sigma) {
  unsigned depth = ceil_log2(sigma);
  if (depth > kMaxDepth) throw std::invalid_argument("extraction index: alphabet too large (sigma > 2^26)");
  return depth;
}

}  // namespace

void extract_levels(const WeightedTree& t, bool with_maps, const std::function<void(ExtLevel&&)>& sink) {
  const std::size_t n = t.size();
  const Weight sigma = t.sigma();
  const unsigned depth_limit = hierarchy_depth(sigma);

  // State of the current depth, by real index.
  std::vector<NodeId> orig(n + 1), par(n + 1), src_id;
  for (NodeId x = 1; x <= n; ++x) {
    orig[x] = x;
    par[x] = t.parent(x);
  }
  std::vector<ExtContext> trees{ExtContext{0, 0, 1, n, 1, sigma}};

  std::vector<NodeId> norig(n + 1), npar(n + 1), nsrc, newidx(n + 1);
  std::vector<NodeId> near[2] = {std::vector<NodeId>(n + 1), std::vector<NodeId>(n + 1)};
  for (unsigned d = 0;; ++d) {
    ExtLevel L;
    L.d = d;
    const std::size_t ids = n + trees.size();
    L.parent.assign(ids + 1, 0);
    for (const auto& c : trees) {
      for (std::size_t r = c.s; r < c.s + c.cnt; ++r)
        L.parent[c.id_of(r)] = par[r] ? c.id_of(par[r]) : c.super_root();
    }
    if (with_maps && d > 0) {
      L.source.assign(ids + 1, 0);
      for (const auto& c : trees)
        for (std::size_t r = c.s; r < c.s + c.cnt; ++r) L.source[c.id_of(r)] = src_id[r];
    }
    if (d == depth_limit) {
      L.trees = std::move(trees);
      sink(std::move(L));
      return;
    }

    L.types = RawBits(n);
    for (const auto& c : trees) {
      if (c.lo >= c.hi) continue;
      Weight mid = c.lo + (c.hi - c.lo) / 2;
      for (std::size_t r = c.s; r < c.s + c.cnt; ++r)
        if (t.weight(orig[r]) > mid) L.types.set(r - 1, true);
    }
    auto type = [&](std::size_t r) { return L.types.get(r - 1); };

    std::vector<ExtContext> next(2 * trees.size());
    if (with_maps) {
      L.view[0].assign(ids + 1, 0);
      L.view[1].assign(ids + 1, 0);
      nsrc.assign(n + 1, 0);
    }
    std::size_t counter = 1;
    for (const auto& c : trees) {
      const std::size_t end = c.s + c.cnt;
      // lowest proper ancestor of each type inside the tree
      for (std::size_t r = c.s; r < end; ++r) {
        NodeId p = par[r];
        for (int k = 0; k < 2; ++k) near[k][r] = p == 0 ? 0 : (type(p) == static_cast<bool>(k) ? p : near[k][p]);
      }
      for (int k = 0; k < 2; ++k) {
        bool tk = k;
        ExtContext& ch = next[2 * c.j + k];
        split_range(c, tk, ch);
        ch.s = counter;
        for (std::size_t r = c.s; r < end; ++r) {
          if (type(r) != tk) continue;
          newidx[r] = static_cast<NodeId>(counter);
          norig[counter] = orig[r];
          npar[counter] = near[k][r] ? newidx[near[k][r]] : 0;
          if (with_maps) nsrc[counter] = c.id_of(r);
          ++counter;
        }
        ch.cnt = counter - ch.s;
      }
      if (with_maps) {
        for (int k = 0; k < 2; ++k) {
          const ExtContext& ch = next[2 * c.j + k];
          auto& view = L.view[k];
          view[c.super_root()] = ch.super_root();
          for (std::size_t r = c.s; r < end; ++r) {
            std::size_t anc = type(r) == static_cast<bool>(k) ? r : near[k][r];
            view[c.id_of(r)] = anc ? ch.id_of(newidx[anc]) : ch.super_root();
          }
        }
      }
    }
    L.trees = std::move(trees);
    sink(std::move(L));
    trees = std::move(next);
    std::swap(orig, norig);
    std::swap(par, npar);
    if (with_maps) std::swap(src_id, nsrc);
  }
}

// ---------------------------------------------------------------------------
// Succinct layout

template <class Bits>
ExtSuccinct<Bits>::ExtSuccinct(const WeightedTree& t)
    : n_(t.size()), sigma_(t.sigma()), depth_limit_(hierarchy_depth(t.sigma())) {
  s_.reserve(depth_limit_ + 1);
  b_.reserve(depth_limit_);
  extract_levels(t, false, [&](ExtLevel&& L) {
    s_.emplace_back(bp_from_parents(L.parent));
    if (L.d < depth_limit_) b_.emplace_back(L.types);
  });
}

template <class Bits>
std::string_view ExtSuccinct<Bits>::name() const {
  if constexpr (std::is_same_v<Bits, RrrBitVector>) return "ext-rrr";
  return "ext-un";
}

template <class Bits>
std::size_t ExtSuccinct<Bits>::size_in_bits() const {
  std::size_t s = 4 * 64;
  for (const auto& x : s_) s += x.size_in_bits();
  for (const auto& x : b_) s += x.size_in_bits();
  return s;
}

template <class Bits>
ExtContext ExtSuccinct<Bits>::child_context(const ExtContext& ctx, bool t) const {
  ExtContext c;
  split_range(ctx, t, c);
  const Bits& b = b_[ctx.d];
  std::size_t zeros = b.rank0(ctx.s + ctx.cnt) - b.rank0(ctx.s);
  c.s = t ? ctx.s + zeros : ctx.s;
  c.cnt = t ? ctx.cnt - zeros : zeros;
  return c;
}

template <class Bits>
ExtContext ExtSuccinct<Bits>::context(unsigned d, std::size_t j) const {
  if (d > depth_limit_ || j >= (std::size_t{1} << d)) throw std::out_of_range("context: no such tree");
  ExtContext ctx = root_context();
  for (unsigned k = d; k-- > 0;) ctx = child_context(ctx, (j >> k) & 1);
  return ctx;
}

template <class Bits>
std::string ExtSuccinct<Bits>::tree_bp(unsigned d, std::size_t j) const {
  ExtContext ctx = context(d, j);
  const auto& bp = s_[d];
  std::size_t from = bp.open(ctx.super_root()), to = bp.close(ctx.super_root());
  std::string out;
  for (std::size_t p = from; p <= to; ++p) out += bp.bits().get(p) ? '(' : ')';
  return out;
}

template <class Bits>
NodeId ExtSuccinct<Bits>::view(const ExtContext& ctx, const ExtContext& child, NodeId v, bool t) const {
  if (v == ctx.super_root()) return child.super_root();
  const Bits& b = b_[ctx.d];
  std::size_t r = ctx.real_of(v);
  std::size_t base = b.rank(t, ctx.s);
  std::size_t before = b.rank(t, r) - base;  // t-nodes of the tree preceding v
  if (b.get(r) == t) return child.id_of(child.s + before);
  if (before == 0) return child.super_root();
  std::size_t ru = b.select(t, base + before);
  NodeId u = ctx.id_of(ru);
  NodeId z = *s_[ctx.d].lca(u, v);
  if (z == u) return child.id_of(child.s + before - 1);
  if (z == ctx.super_root()) return child.super_root();
  // The first t-node after z lies below z; its parent in the child tree is
  // the view of z, which is also the view of v.
  std::size_t rz = ctx.real_of(z);
  std::size_t first = b.rank(t, rz + 1) - base;  // t-nodes up to and including z
  NodeId f = child.id_of(child.s + first);
  return *s_[child.d].parent(f);
}

template <class Bits>
NodeId ExtSuccinct<Bits>::source_of(const ExtContext& ctx, bool t, NodeId x) const {
  ExtContext child = child_context(ctx, t);
  std::size_t pos = child.real_of(x) - child.s + 1;
  const Bits& b = b_[ctx.d];
  return ctx.id_of(b.select(t, b.rank(t, ctx.s) + pos));
}

template <class Bits>
NodeId ExtSuccinct<Bits>::outermost(const std::vector<ExtContext>& path, NodeId x) const {
  for (std::size_t i = path.size() - 1; i > 0; --i) {
    const ExtContext& parent = path[i - 1];
    const ExtContext& child = path[i];
    bool t = child.j & 1;
    std::size_t pos = child.real_of(x) - child.s + 1;
    const Bits& b = b_[parent.d];
    x = parent.id_of(b.select(t, b.rank(t, parent.s) + pos));
  }
  return x;
}

template <class Bits>
Weight ExtSuccinct<Bits>::weight_at(const std::vector<ExtContext>& path, NodeId x) const {
  return weight_from(path.back(), path.back().real_of(x));
}

template <class Bits>
Weight ExtSuccinct<Bits>::weight_from(ExtContext ctx, std::size_t r) const {
  while (ctx.lo < ctx.hi) {
    bool t = b_[ctx.d].get(r);
    ExtContext c = child_context(ctx, t);
    r = child_real(ctx, c, r, t);
    ctx = c;
  }
  return ctx.lo;
}

template class ExtSuccinct<PlainBitVector>;
template class ExtSuccinct<RrrBitVector>;

// ---------------------------------------------------------------------------
// Explicit layout

ExtExplicit::ExtExplicit(const WeightedTree& t)
    : weight_(t.weights()),
      n_(t.size()),
      sigma_(t.sigma()),
      depth_limit_(hierarchy_depth(t.sigma())) {
  levels_.reserve(depth_limit_ + 1);
  extract_levels(t, true, [&](ExtLevel&& L) {
    if (L.d == 0) top_ = BpTree<PlainBitVector>(bp_from_parents(L.parent));
    Level lv;
    lv.view[0] = std::move(L.view[0]);
    lv.view[1] = std::move(L.view[1]);
    lv.source = std::move(L.source);
    lv.depth.assign(L.parent.size(), 0);
    for (std::size_t x = 1; x < L.parent.size(); ++x)
      if (L.parent[x]) lv.depth[x] = lv.depth[L.parent[x]] + 1;
    lv.parent = std::move(L.parent);
    levels_.push_back(std::move(lv));
  });
}

ExtContext ExtExplicit::child_context(const ExtContext& ctx, bool t) const {
  ExtContext c;
  split_range(ctx, t, c);
  return c;
}

NodeId ExtExplicit::outermost(const std::vector<ExtContext>& path, NodeId x) const {
  for (std::size_t i = path.size() - 1; i > 0; --i) x = levels_[path[i].d].source[x];
  return x;
}

std::size_t ExtExplicit::size_in_bits() const {
  std::size_t s = top_.size_in_bits() + 32 * weight_.size() + 4 * 64;
  for (const auto& lv : levels_)
    s += 32 * (lv.view[0].size() + lv.view[1].size() + lv.depth.size() + lv.parent.size() + lv.source.size());
  return s;
}

}  // namespace treepath
