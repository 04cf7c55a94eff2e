#include <gtest/gtest.h>

#include <bit>
#include <random>
#include <set>

#include "path_oracle.hpp"
#include "treepath/generate.hpp"
#include "treepath/hpd_index.hpp"

using namespace treepath;
using treepath::testing::brute_answer;
using treepath::testing::brute_path;
using treepath::testing::kWorkedTree;

namespace {

std::string bits_string(const RawBits& b) {
  std::string s;
  for (std::size_t i = 0; i < b.size(); ++i) s += b.get(i) ? '1' : '0';
  return s;
}

// Head of every node computed from subtree sizes by walking down from the root.
std::vector<NodeId> oracle_heads(const WeightedTree& t) {
  std::size_t n = t.size();
  std::vector<std::size_t> size(n + 1, 0);
  std::function<std::size_t(NodeId)> sz = [&](NodeId v) {
    std::size_t s = 1;
    for (NodeId c : t.children(v)) s += sz(c);
    return size[v] = s;
  };
  sz(1);
  std::vector<NodeId> head(n + 1, 0);
  head[1] = 1;
  for (NodeId v = 1; v <= n; ++v) {
    NodeId best = kNoNode;
    for (NodeId c : t.children(v))
      if (best == kNoNode || size[c] > size[best]) best = c;
    for (NodeId c : t.children(v)) head[c] = c == best ? head[v] : c;
  }
  return head;
}

template <class Index>
void check_decomposition(const WeightedTree& t, const Index& idx, std::size_t samples, uint64_t seed) {
  std::size_t n = t.size();
  unsigned lg = std::bit_width(n) - 1;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeId> nd(1, static_cast<NodeId>(n));
  for (std::size_t k = 0; k < samples; ++k) {
    NodeId x = nd(rng), y = nd(rng);
    auto parts = idx.decompose(x, y);
    ASSERT_LE(parts.size(), 2 * lg + 2);
    std::multiset<NodeId> covered;
    for (const auto& c : parts) {
      ASSERT_LE(c.l, c.r);
      for (std::size_t p = c.l; p <= c.r; ++p) covered.insert(idx.node_above(c.deep, static_cast<uint32_t>(c.r - p)));
    }
    auto path = brute_path(t, x, y);
    ASSERT_EQ(covered, std::multiset<NodeId>(path.begin(), path.end())) << x << " " << y;
  }
}

template <class Index>
void check_queries(const WeightedTree& t, uint64_t seed, std::size_t per_kind) {
  Index idx(t);
  for (auto kind : {QueryKind::Median, QueryKind::Count, QueryKind::Report})
    for (uint32_t K : {1u, 10u, 100u})
      for (const auto& q : gen_queries(t, kind, K, per_kind, seed + K))
        ASSERT_EQ(idx.answer(q), brute_answer(t, q)) << idx.name() << " " << serialize_queries(std::vector{q});
}

}  // namespace

TEST(Hpd, WorkedTreeLayout) {
  auto t = parse_ptw(kWorkedTree);
  HeavyPaths hp(t);
  EXPECT_EQ(bits_string(hp.ref_bits()), "10000111101010001110");
  std::vector<NodeId> heads;
  for (NodeId x = 1; x <= t.size(); ++x)
    if (hp.head[x] == x) heads.push_back(x);
  EXPECT_EQ(heads, (std::vector<NodeId>{1, 5, 6, 7, 10}));
  EXPECT_EQ(hp.chain_weights, (std::vector<Weight>{5, 3, 8, 1, 4, 8, 2, 7, 6, 2}));

  HpdSuccinct<PlainBitVector> un(t);
  EXPECT_EQ(un.ref_count(1), 4u);
  EXPECT_EQ(un.ref_count(7), 3u);
  EXPECT_EQ(un.ref_count(8), 0u);
  EXPECT_EQ(un.ref_count(10), 1u);
  EXPECT_EQ(un.ref(3), 1u);
  EXPECT_EQ(un.ref(9), 7u);
  EXPECT_EQ(un.ref(10), 10u);
  EXPECT_EQ(un.pos(9), 9u);
  auto parts = un.decompose(5, 9);
  EXPECT_EQ(parts, (std::vector<ChainInterval>{{5, 5, 5}, {7, 9, 9}, {1, 3, 3}}));
  HpdExplicit ex(t);
  EXPECT_EQ(ex.decompose(5, 9), parts);
}

TEST(Hpd, WorkedTreeQueries) {
  auto t = parse_ptw(kWorkedTree);
  HpdSuccinct<PlainBitVector> un(t);
  HpdSuccinct<RrrBitVector> rrr(t);
  HpdExplicit ex(t);
  for (const PathIndex* idx : std::initializer_list<const PathIndex*>{&un, &rrr, &ex}) {
    EXPECT_EQ(idx->median(5, 9), 5u) << idx->name();
    EXPECT_EQ(idx->median(4, 6), 8u) << idx->name();
    EXPECT_EQ(idx->count(5, 9, 3, 7), 5u) << idx->name();
    EXPECT_EQ(idx->answer(PathQuery{QueryKind::Report, 4, 6, 2, 7}).hits, (std::vector<Hit>{{2, 3}})) << idx->name();
  }
}

TEST(Hpd, MatchesDefinition) {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    std::size_t n = 1 + seed * 37;
    auto t = gen_tree(n, 16, seed % 2 ? TreeShape::LongPaths : TreeShape::UniformAttach, seed);
    HeavyPaths hp(t);
    auto head = oracle_heads(t);
    std::vector<bool> seen(n + 1, false);
    for (NodeId x = 1; x <= n; ++x) {
      ASSERT_EQ(hp.head[x], head[x]);
      ASSERT_GE(hp.pos[x], 1u);
      ASSERT_LE(hp.pos[x], n);
      ASSERT_FALSE(seen[hp.pos[x]]);
      seen[hp.pos[x]] = true;
      ASSERT_EQ(hp.chain_weights[hp.pos[x] - 1], t.weight(x));
      if (head[x] != x) ASSERT_EQ(hp.pos[x], hp.pos[t.parent(x)] + 1);
    }
    HpdSuccinct<RrrBitVector> idx(t);
    for (NodeId x = 1; x <= n; ++x) {
      ASSERT_EQ(idx.ref(x), head[x]);
      ASSERT_EQ(idx.pos(x), hp.pos[x]);
      ASSERT_EQ(idx.is_head(x), hp.ref_count[x] > 0);
    }
  }
}

TEST(Hpd, ChainsPerRootPathAreLogarithmic) {
  for (auto shape : {TreeShape::UniformAttach, TreeShape::LongPaths}) {
    auto t = gen_tree(20000, 50, shape, 5);
    HeavyPaths hp(t);
    unsigned lg = std::bit_width(t.size()) - 1;
    for (NodeId x = 1; x <= t.size(); ++x) {
      unsigned chains = 0;
      for (NodeId v = x; v != kNoNode; v = t.parent(hp.head[v])) ++chains;
      ASSERT_LE(chains, lg + 1);
    }
  }
}

TEST(Hpd, DecompositionCoversPathExactly) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    auto t = gen_tree(3000, 100, seed % 2 ? TreeShape::LongPaths : TreeShape::UniformAttach, seed);
    check_decomposition(t, HpdSuccinct<PlainBitVector>(t), 200, seed);
    check_decomposition(t, HpdExplicit(t), 200, seed);
  }
}

TEST(Hpd, QueriesMatchBruteForce) {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 60; ++iter) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 2000)(rng);
    Weight sigma = std::vector<Weight>{1, 2, 7, 256, static_cast<Weight>(n)}[iter % 5];
    auto t = gen_tree(n, sigma, iter % 2 ? TreeShape::LongPaths : TreeShape::UniformAttach, 300 + iter);
    check_queries<HpdSuccinct<PlainBitVector>>(t, iter, 40);
    check_queries<HpdSuccinct<RrrBitVector>>(t, iter, 40);
    check_queries<HpdExplicit>(t, iter, 40);
  }
}
