#pragma once

// Path indexes that answer every query by walking the path explicitly.
//
//   NaiveExplicit  forward-star children, parent/depth/weight arrays; the two
//                  endpoints climb by depth, then in lockstep, until they meet.
//   NaiveLca       the same arrays plus an Euler-tour sparse table for LCA.
//   NaiveSuccinct  BP topology plus weights packed at ceil(lg sigma) bits.

#include <algorithm>
#include <vector>

#include "treepath/bptree.hpp"
#include "treepath/path_index.hpp"

namespace treepath {

// Pointer-style tree arrays, indexed by node id (slot 0 unused).
struct ExplicitTopology {
  explicit ExplicitTopology(const WeightedTree& t);

  std::size_t n = 0;
  Weight sigma = 1;
  std::vector<uint32_t> child_start;  // forward star
  std::vector<NodeId> child_list;
  std::vector<NodeId> parent;
  std::vector<uint32_t> depth;
  std::vector<Weight> weight;

  std::size_t size_in_bits() const;
};

// Derived supplies lca(x, y), parent_of(x) and weight_of(x).
template <class Derived>
class NaiveBase : public PathIndex {
 public:
  Weight select(NodeId x, NodeId y, std::size_t k) const override {
    thread_local std::vector<Weight> buf;
    buf.clear();
    self().for_each_on_path(x, y, [&](NodeId, Weight w) { buf.push_back(w); });
    if (k >= buf.size()) throw std::out_of_range("select: rank exceeds path length");
    std::nth_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(k), buf.end());
    return buf[k];
  }
  std::size_t count(NodeId x, NodeId y, Weight a, Weight b) const override {
    std::size_t c = 0;
    self().for_each_on_path(x, y, [&](NodeId, Weight w) { c += a <= w && w <= b; });
    return c;
  }
  void report(NodeId x, NodeId y, Weight a, Weight b, std::vector<Hit>& out) const override {
    self().for_each_on_path(x, y, [&](NodeId v, Weight w) {
      if (a <= w && w <= b) out.push_back(Hit{v, w});
    });
  }
  std::size_t path_length(NodeId x, NodeId y) const override {
    std::size_t c = 0;
    self().for_each_on_path(x, y, [&](NodeId, Weight) { ++c; });
    return c;
  }

  // Default walk: both endpoints climb to a precomputed LCA.
  template <class F>
  void for_each_on_path(NodeId x, NodeId y, F&& f) const {
    NodeId z = self().lca(x, y);
    for (; x != z; x = self().parent_of(x)) f(x, self().weight_of(x));
    for (; y != z; y = self().parent_of(y)) f(y, self().weight_of(y));
    f(z, self().weight_of(z));
  }

  // Path nodes in order x, ..., lca, ..., y.
  std::vector<NodeId> traverse_path(NodeId x, NodeId y) const {
    NodeId z = self().lca(x, y);
    std::vector<NodeId> out, tail;
    for (; x != z; x = self().parent_of(x)) out.push_back(x);
    out.push_back(z);
    for (; y != z; y = self().parent_of(y)) tail.push_back(y);
    out.insert(out.end(), tail.rbegin(), tail.rend());
    return out;
  }

 private:
  const Derived& self() const { return static_cast<const Derived&>(*this); }
};

class NaiveExplicit : public NaiveBase<NaiveExplicit> {
 public:
  explicit NaiveExplicit(const WeightedTree& t) : topo_(t) {}

  std::string_view name() const override { return "nv"; }
  std::size_t nodes() const override { return topo_.n; }
  Weight sigma() const override { return topo_.sigma; }
  std::size_t size_in_bits() const override { return topo_.size_in_bits(); }

  NodeId lca(NodeId x, NodeId y) const;
  NodeId parent_of(NodeId x) const { return topo_.parent[x]; }
  Weight weight_of(NodeId x) const { return topo_.weight[x]; }

  // Single pass: climb by depth, then in lockstep, reporting as it goes.
  template <class F>
  void for_each_on_path(NodeId x, NodeId y, F&& f) const {
    const auto& par = topo_.parent;
    const auto& dep = topo_.depth;
    const auto& w = topo_.weight;
    while (dep[x] > dep[y]) {
      f(x, w[x]);
      x = par[x];
    }
    while (dep[y] > dep[x]) {
      f(y, w[y]);
      y = par[y];
    }
    while (x != y) {
      f(x, w[x]);
      f(y, w[y]);
      x = par[x];
      y = par[y];
    }
    f(x, w[x]);
  }

 private:
  ExplicitTopology topo_;
};

class NaiveLca : public NaiveBase<NaiveLca> {
 public:
  explicit NaiveLca(const WeightedTree& t);

  std::string_view name() const override { return "nv-lca"; }
  std::size_t nodes() const override { return topo_.n; }
  Weight sigma() const override { return topo_.sigma; }
  std::size_t path_length(NodeId x, NodeId y) const override {
    NodeId z = sparse_lca(x, y);
    return topo_.depth[x] + topo_.depth[y] - 2 * topo_.depth[z] + 1;
  }
  std::size_t size_in_bits() const override;

  NodeId sparse_lca(NodeId x, NodeId y) const;
  NodeId lca(NodeId x, NodeId y) const { return sparse_lca(x, y); }
  NodeId parent_of(NodeId x) const { return topo_.parent[x]; }
  Weight weight_of(NodeId x) const { return topo_.weight[x]; }

 private:
  ExplicitTopology topo_;
  std::vector<NodeId> euler_;
  std::vector<uint32_t> first_;
  std::vector<std::vector<NodeId>> table_;  // table_[k][i]: shallowest of euler_[i, i + 2^k)
};

class NaiveSuccinct : public NaiveBase<NaiveSuccinct> {
 public:
  explicit NaiveSuccinct(const WeightedTree& t);

  std::string_view name() const override { return "nv-suc"; }
  std::size_t nodes() const override { return bp_.nodes(); }
  Weight sigma() const override { return sigma_; }
  std::size_t path_length(NodeId x, NodeId y) const override {
    NodeId z = lca(x, y);
    return bp_.depth(x) + bp_.depth(y) - 2 * bp_.depth(z) + 1;
  }
  std::size_t size_in_bits() const override { return bp_.size_in_bits() + weights_.size_in_bits() + 64; }

  NodeId lca(NodeId x, NodeId y) const { return *bp_.lca(x, y); }
  NodeId parent_of(NodeId x) const { return *bp_.parent(x); }
  Weight weight_of(NodeId x) const { return static_cast<Weight>(weights_.get(x - 1)) + 1; }
  const BpTree<PlainBitVector>& topology() const { return bp_; }

 private:
  BpTree<PlainBitVector> bp_;
  IntVector weights_;  // w - 1
  Weight sigma_ = 1;
};

}  // namespace treepath
