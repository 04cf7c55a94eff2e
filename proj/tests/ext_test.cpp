#include <gtest/gtest.h>

#include <list>
#include <random>

#include "path_oracle.hpp"
#include "treepath/ext_index.hpp"
#include "treepath/generate.hpp"

using namespace treepath;
using treepath::testing::brute_answer;
using treepath::testing::kWorkedTree;

namespace {

// Extraction by literal node removal: every node outside keep is deleted and
// its children take its place among its siblings. A dummy root holds the
// original root so the result is always a single tree.
std::string splice_extract(const WeightedTree& t, const std::vector<bool>& keep) {
  std::size_t n = t.size();
  std::vector<std::list<NodeId>> kids(n + 1);  // node 0 is the dummy root
  kids[0].push_back(1);
  for (NodeId x = 1; x <= n; ++x)
    for (NodeId c : t.children(x)) kids[x].push_back(c);
  std::vector<NodeId> par(n + 1, 0);
  for (NodeId x = 2; x <= n; ++x) par[x] = t.parent(x);
  for (NodeId x = 1; x <= n; ++x) {
    if (keep[x]) continue;
    auto& siblings = kids[par[x]];
    auto it = std::find(siblings.begin(), siblings.end(), x);
    for (NodeId c : kids[x]) par[c] = par[x];
    siblings.splice(it, kids[x]);
    siblings.erase(it);
  }
  std::string out;
  std::function<void(NodeId)> emit = [&](NodeId v) {
    out += '(';
    for (NodeId c : kids[v]) emit(c);
    out += ')';
  };
  emit(0);
  return out;
}

// Range of tree j at depth d by the halving rule.
std::pair<Weight, Weight> tree_range(Weight sigma, unsigned d, std::size_t j) {
  Weight lo = 1, hi = sigma;
  for (unsigned k = d; k-- > 0;) {
    bool t = (j >> k) & 1;
    if (lo > hi) continue;
    if (lo == hi) {
      if (t) lo = hi + 1;
      continue;
    }
    Weight mid = lo + (hi - lo) / 2;
    if (t) lo = mid + 1; else hi = mid;
  }
  return {lo, hi};
}

std::vector<NodeId> members(const WeightedTree& t, Weight lo, Weight hi) {
  std::vector<NodeId> out;
  for (NodeId x = 1; x <= t.size(); ++x)
    if (lo <= t.weight(x) && t.weight(x) <= hi) out.push_back(x);
  return out;
}

template <class Bits>
void check_structure(const WeightedTree& t) {
  ExtSuccinct<Bits> ext(t);
  ASSERT_EQ(ext.levels(), ceil_log2(t.sigma()));
  for (unsigned d = 0; d <= ext.levels(); ++d) {
    for (std::size_t j = 0; j < (std::size_t{1} << d); ++j) {
      auto [lo, hi] = tree_range(t.sigma(), d, j);
      auto ctx = ext.context(d, j);
      ASSERT_EQ(ctx.lo, lo);
      ASSERT_EQ(ctx.hi, hi);
      std::vector<bool> keep(t.size() + 1, false);
      auto mem = members(t, lo, hi);
      for (NodeId x : mem) keep[x] = true;
      ASSERT_EQ(ext.tree_bp(d, j), splice_extract(t, keep)) << "d=" << d << " j=" << j;
      ASSERT_EQ(ctx.cnt, mem.size());
      if (d == ext.levels()) continue;
      // views against "lowest t-typed ancestor-or-self, located by rank"
      for (bool tt : {false, true}) {
        auto child = ext.child_context(ctx, tt);
        auto cmem = members(t, child.lo, child.hi);
        std::vector<std::size_t> rank_in_child(t.size() + 1, 0);
        for (std::size_t k = 0; k < cmem.size(); ++k) rank_in_child[cmem[k]] = k + 1;
        ASSERT_EQ(ext.view_of(ctx, ctx.super_root(), tt), child.super_root());
        for (std::size_t k = 0; k < mem.size(); ++k) {
          NodeId v = ctx.id_of(ctx.s + k);
          NodeId a = mem[k];
          while (a != kNoNode && rank_in_child[a] == 0) a = t.parent(a);
          NodeId want = a == kNoNode ? child.super_root() : child.id_of(child.s + rank_in_child[a] - 1);
          ASSERT_EQ(ext.view_of(ctx, v, tt), want) << "d=" << d << " j=" << j << " k=" << k << " t=" << tt;
        }
        for (std::size_t k = 0; k < cmem.size(); ++k) {
          NodeId x = child.id_of(child.s + k);
          NodeId src = ext.source_of(ctx, tt, x);
          ASSERT_EQ(ext.view_of(ctx, src, tt), x);
          ASSERT_EQ(mem[ctx.real_of(src) - ctx.s], cmem[k]);
        }
      }
    }
  }
}

template <class Index>
void check_queries(const WeightedTree& t, uint64_t seed, std::size_t per_kind) {
  Index idx(t);
  for (auto kind : {QueryKind::Median, QueryKind::Count, QueryKind::Report}) {
    for (uint32_t K : {1u, 10u, 100u}) {
      for (const auto& q : gen_queries(t, kind, K, per_kind, seed + K)) {
        ASSERT_EQ(idx.answer(q), brute_answer(t, q)) << idx.name() << " " << serialize_queries(std::vector{q});
      }
    }
  }
}

}  // namespace

TEST(Ext, WorkedTreeExtraction) {
  auto t = parse_ptw(kWorkedTree);
  ExtSuccinct<PlainBitVector> ext(t);
  EXPECT_EQ(ext.levels(), 3u);
  EXPECT_EQ(ext.tree_bp(0, 0), "((((()())())((())())))");
  // weights <= 4 are nodes 2,4,5,7,10; node 1 is gone so 2 and 7 become roots
  EXPECT_EQ(ext.tree_bp(1, 0), "((()())(()))");
  EXPECT_EQ(ext.context(1, 0).cnt, 5u);
  check_structure<PlainBitVector>(t);
}

TEST(Ext, WorkedTreeQueries) {
  auto t = parse_ptw(kWorkedTree);
  ExtSuccinct<PlainBitVector> un(t);
  ExtSuccinct<RrrBitVector> rrr(t);
  ExtExplicit ex(t);
  for (const PathIndex* idx : std::initializer_list<const PathIndex*>{&un, &rrr, &ex}) {
    EXPECT_EQ(idx->select(5, 9, 3), 5u) << idx->name();
    EXPECT_EQ(idx->select(4, 6, 2), 8u) << idx->name();
    EXPECT_EQ(idx->median(5, 9), 5u) << idx->name();
    EXPECT_EQ(idx->median(4, 6), 8u) << idx->name();
    EXPECT_EQ(idx->median(6, 6), 8u) << idx->name();
    EXPECT_EQ(idx->count(5, 9, 3, 7), 5u) << idx->name();
    EXPECT_EQ(idx->count(5, 9, 1, 8), 7u) << idx->name();
    EXPECT_EQ(idx->answer(PathQuery{QueryKind::Report, 4, 6, 2, 7}).hits, (std::vector<Hit>{{2, 3}})) << idx->name();
    EXPECT_THROW(idx->select(5, 9, 7), std::out_of_range);
  }
}

TEST(Ext, ThreeNodePathViewThroughAncestor) {
  // types 0,1,0 along the path: node 3's 1-view is the copy of node 2
  auto t = parse_ptw("3 2\n((()))\n1 2 1\n");
  ExtSuccinct<PlainBitVector> ext(t);
  auto root = ext.root_context();
  auto c1 = ext.child_context(root, true);
  EXPECT_EQ(ext.view_of(root, 4, true), c1.id_of(c1.s));
  EXPECT_EQ(ext.view_of(root, 4, false), ext.child_context(root, false).id_of(2));
  EXPECT_EQ(ext.tree_bp(1, 0), "((()))");
  EXPECT_EQ(ext.tree_bp(1, 1), "(())");
}

TEST(Ext, SigmaOneHasSingleLevel) {
  auto t = gen_tree(50, 1, TreeShape::UniformAttach, 3);
  ExtSuccinct<RrrBitVector> ext(t);
  EXPECT_EQ(ext.levels(), 0u);
  check_queries<ExtSuccinct<RrrBitVector>>(t, 1, 20);
  check_queries<ExtExplicit>(t, 1, 20);
}

TEST(Ext, ExtractionMatchesSplicingOracle) {
  std::mt19937_64 rng(77);
  for (int iter = 0; iter < 100; ++iter) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 120)(rng);
    Weight sigma = std::vector<Weight>{1, 2, 7, 13, static_cast<Weight>(n)}[iter % 5];
    auto t = gen_tree(n, sigma, iter % 2 ? TreeShape::LongPaths : TreeShape::UniformAttach, 500 + iter);
    if (iter % 2) {
      check_structure<PlainBitVector>(t);
    } else {
      check_structure<RrrBitVector>(t);
    }
  }
}

TEST(Ext, ExplicitMapsMatchSuccinctViews) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    auto t = gen_tree(300, 37, seed % 2 ? TreeShape::LongPaths : TreeShape::UniformAttach, seed);
    ExtSuccinct<PlainBitVector> ext(t);
    std::vector<ExtLevel> levels;
    extract_levels(t, true, [&](ExtLevel&& L) { levels.push_back(std::move(L)); });
    ASSERT_EQ(levels.size(), ext.levels() + 1u);
    for (unsigned d = 0; d < ext.levels(); ++d) {
      for (const auto& ctx : levels[d].trees) {
        auto sctx = ext.context(d, ctx.j);
        ASSERT_EQ(sctx.s, ctx.s);
        ASSERT_EQ(sctx.cnt, ctx.cnt);
        for (NodeId v = ctx.super_root(); v <= ctx.id_of(ctx.s + ctx.cnt - 1); ++v)
          for (bool tt : {false, true}) ASSERT_EQ(ext.view_of(sctx, v, tt), levels[d].view[tt][v]);
      }
      for (NodeId x = 1; x < levels[d + 1].source.size(); ++x) {
        NodeId src = levels[d + 1].source[x];
        if (src == 0) continue;
        ASSERT_EQ(levels[d].view[0][src] == x || levels[d].view[1][src] == x, true);
      }
    }
  }
}

TEST(Ext, QueriesMatchBruteForce) {
  std::mt19937_64 rng(91);
  for (int iter = 0; iter < 60; ++iter) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 2000)(rng);
    Weight sigma = std::vector<Weight>{1, 2, 7, 256, static_cast<Weight>(n)}[iter % 5];
    auto t = gen_tree(n, sigma, iter % 2 ? TreeShape::LongPaths : TreeShape::UniformAttach, 900 + iter);
    check_queries<ExtSuccinct<PlainBitVector>>(t, iter, 40);
    check_queries<ExtSuccinct<RrrBitVector>>(t, iter, 40);
    check_queries<ExtExplicit>(t, iter, 40);
  }
}

TEST(Ext, CountProperties) {
  auto t = gen_tree(1500, 200, TreeShape::LongPaths, 12);
  ExtSuccinct<PlainBitVector> ext(t);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<NodeId> nd(1, 1500);
  std::uniform_int_distribution<Weight> wd(1, 200);
  for (int k = 0; k < 2000; ++k) {
    NodeId x = nd(rng), y = nd(rng);
    ASSERT_EQ(ext.count(x, y, 1, 200), ext.path_length(x, y));
    Weight a = wd(rng), b = wd(rng);
    if (a > b) std::swap(a, b);
    Weight a2 = a > 1 ? a - 1 : a, b2 = b < 200 ? b + 1 : b;
    ASSERT_LE(ext.count(x, y, a, b), ext.count(x, y, a2, b2));
  }
}

TEST(Ext, SuccinctSizeBound) {
  auto t = gen_tree(1u << 16, 256, TreeShape::UniformAttach, 2);
  ExtSuccinct<PlainBitVector> ext(t);
  double lg = ceil_log2(t.sigma());
  EXPECT_LE(static_cast<double>(ext.size_in_bits()), 4.5 * t.size() * lg + 8.0 * t.size());
}
