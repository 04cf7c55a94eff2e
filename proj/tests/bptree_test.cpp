#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "treepath/bptree.hpp"
#include "treepath/generate.hpp"

using namespace treepath;

namespace {

const char* kFig1 = "(((()())())((())()))";

// Parent/child arrays from a stack parse of a BP string (forest allowed).
struct ParsedTree {
  std::vector<NodeId> parent{kNoNode};
  std::vector<std::vector<NodeId>> children{{}};
  std::vector<uint32_t> depth{0};

  explicit ParsedTree(const std::string& bp) {
    std::vector<NodeId> stack;
    for (char c : bp) {
      if (c == '(') {
        NodeId x = static_cast<NodeId>(parent.size());
        NodeId p = stack.empty() ? kNoNode : stack.back();
        parent.push_back(p);
        children.emplace_back();
        depth.push_back(stack.size());
        if (p != kNoNode) children[p].push_back(x);
        stack.push_back(x);
      } else {
        stack.pop_back();
      }
    }
  }
  std::size_t n() const { return parent.size() - 1; }
  NodeId walk_lca(NodeId x, NodeId y) const {
    while (depth[x] > depth[y]) x = parent[x];
    while (depth[y] > depth[x]) y = parent[y];
    while (x != y) {
      x = parent[x];
      y = parent[y];
      if (x == kNoNode || y == kNoNode) return kNoNode;
    }
    return x;
  }
};

template <class Bits>
void check_navigation(const std::string& bp, std::mt19937_64& rng, std::size_t lca_pairs) {
  ParsedTree o(bp);
  BpTree<Bits> t(RawBits::from_string(bp));
  ASSERT_EQ(t.nodes(), o.n());
  ASSERT_EQ(t.to_string(), bp);
  for (NodeId x = 1; x <= o.n(); ++x) {
    ASSERT_EQ(t.node_at(t.open(x)), x);
    ASSERT_EQ(t.depth(x), o.depth[x]) << "x=" << x;
    auto p = t.parent(x);
    ASSERT_EQ(p.value_or(kNoNode), o.parent[x]) << "x=" << x;
    // every ancestor for shallow nodes, a stride of them for deep ones
    uint32_t stride = o.depth[x] < 64 ? 1 : o.depth[x] / 16;
    NodeId anc = x;
    for (uint32_t i = 0; i <= o.depth[x]; ++i) {
      if (i % stride == 0 || i == o.depth[x]) ASSERT_EQ(t.level_anc(x, i), anc) << "x=" << x << " i=" << i;
      anc = o.parent[anc];
    }
    const auto& kids = o.children[x];
    for (std::size_t i = 0; i < kids.size(); ++i) ASSERT_EQ(t.child(x, i + 1).value_or(kNoNode), kids[i]);
    ASSERT_FALSE(t.child(x, kids.size() + 1).has_value());
  }
  std::uniform_int_distribution<NodeId> nd(1, static_cast<NodeId>(o.n()));
  for (std::size_t k = 0; k < lca_pairs; ++k) {
    NodeId x = nd(rng), y = nd(rng);
    NodeId want = o.walk_lca(x, y);
    ASSERT_EQ(t.lca(x, y).value_or(kNoNode), want) << "x=" << x << " y=" << y;
  }
}

}  // namespace

TEST(BpTree, Fig1TreeFrozenValues) {
  BpTree<PlainBitVector> t(RawBits::from_string(kFig1));
  EXPECT_EQ(t.nodes(), 10u);
  EXPECT_EQ(t.parent(3).value(), 2u);
  EXPECT_FALSE(t.parent(1).has_value());
  EXPECT_EQ(t.depth(9), 3u);
  EXPECT_EQ(t.depth(1), 0u);
  EXPECT_EQ(t.lca(5, 9).value(), 1u);
  EXPECT_EQ(t.lca(4, 6).value(), 2u);
  EXPECT_EQ(t.lca(4, 4).value(), 4u);
  EXPECT_EQ(t.level_anc(9, 2), 7u);
  EXPECT_EQ(t.level_anc(9, 0), 9u);
  EXPECT_EQ(t.child(1, 2).value(), 7u);
  EXPECT_FALSE(t.child(4, 1).has_value());
  EXPECT_EQ(t.subtree_size(2), 5u);
  EXPECT_TRUE(t.is_ancestor(2, 5));
  EXPECT_FALSE(t.is_ancestor(5, 2));
}

TEST(BpTree, ParentsToBpMatchesFig1) {
  // Fig-1 tree as a parent array in preorder.
  std::vector<NodeId> parent{0, 0, 1, 2, 3, 3, 2, 1, 7, 8, 7};
  std::string s;
  for (char c : bp_from_parents(parent).to_string()) s += c == '1' ? '(' : ')';
  EXPECT_EQ(s, kFig1);
}

TEST(BpTree, TrivialShapes) {
  BpTree<PlainBitVector> single(RawBits::from_string("()"));
  EXPECT_EQ(single.nodes(), 1u);
  EXPECT_EQ(single.depth(1), 0u);
  EXPECT_FALSE(single.parent(1).has_value());
  BpTree<RrrBitVector> path(RawBits::from_string("((()))"));
  EXPECT_EQ(path.depth(3), 2u);
  EXPECT_EQ(path.lca(3, 2).value(), 2u);
  EXPECT_EQ(path.level_anc(3, 2), 1u);
}

TEST(BpTree, ForestHasNoCrossLca) {
  BpTree<PlainBitVector> f(RawBits::from_string("()(())(()())"));
  EXPECT_EQ(f.nodes(), 6u);
  EXPECT_FALSE(f.lca(1, 3).has_value());
  EXPECT_EQ(f.lca(5, 6).value(), 4u);
  EXPECT_EQ(f.depth(4), 0u);
  EXPECT_FALSE(f.parent(2).has_value());
  EXPECT_EQ(f.parent(3).value(), 2u);
}

TEST(BpTree, RandomTreesMatchParentArrayOracle) {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 200; ++iter) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 2000)(rng);
    auto shape = iter % 2 ? TreeShape::LongPaths : TreeShape::UniformAttach;
    auto tree = gen_tree(n, 4, shape, 1000 + iter);
    std::string bp = tree.bp_string();
    if (iter % 2) {
      check_navigation<PlainBitVector>(bp, rng, 2000);
    } else {
      check_navigation<RrrBitVector>(bp, rng, 2000);
    }
  }
}

TEST(BpTree, DeepAndWideTreesCrossManyBlocks) {
  std::mt19937_64 rng(23);
  std::string deep = std::string(30000, '(') + std::string(30000, ')');
  check_navigation<PlainBitVector>(deep, rng, 3000);
  check_navigation<RrrBitVector>(deep, rng, 3000);
  std::string wide = "(";
  for (int i = 0; i < 20000; ++i) wide += "()";
  wide += ")";
  check_navigation<PlainBitVector>(wide, rng, 3000);
  // caterpillar: long spine with a leaf hanging off every spine node
  std::string cat;
  for (int i = 0; i < 10000; ++i) cat += "(()";
  for (int i = 0; i < 10000; ++i) cat += ")";
  check_navigation<RrrBitVector>(cat, rng, 3000);
}

TEST(BpTree, LcaProperties) {
  auto tree = gen_tree(5000, 2, TreeShape::UniformAttach, 7);
  BpTree<PlainBitVector> t(RawBits::from_string(tree.bp_string()));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<NodeId> nd(1, 5000);
  for (int k = 0; k < 10000; ++k) {
    NodeId x = nd(rng), y = nd(rng);
    NodeId z = t.lca(x, y).value();
    ASSERT_TRUE(t.is_ancestor(z, x));
    ASSERT_TRUE(t.is_ancestor(z, y));
    ASSERT_LE(t.depth(z), std::min(t.depth(x), t.depth(y)));
  }
}

TEST(BpTree, SizeWithinThreeBitsPerNode) {
  auto tree = gen_tree(1u << 16, 2, TreeShape::UniformAttach, 3);
  BpTree<PlainBitVector> t(RawBits::from_string(tree.bp_string()));
  EXPECT_LE(t.size_in_bits(), 3 * tree.size());
}
