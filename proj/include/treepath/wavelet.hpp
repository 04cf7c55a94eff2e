#pragma once

// Levelwise binary wavelet tree over a sequence of weights in [1..sigma].
//
// Each of the ceil(lg sigma) levels is one bitmap of length n; a node with
// weight range [lo, hi] owns a contiguous slice of its level and routes a
// value left iff it is <= floor((lo+hi)/2). A node with lo == hi keeps its
// slice in place (all zeros) so every level stays aligned.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "treepath/bitvec.hpp"
#include "treepath/types.hpp"

namespace treepath {

// Inclusive range of 1-based positions; empty when l > r.
struct PosInterval {
  std::size_t l = 1;
  std::size_t r = 0;
  std::size_t length() const { return l > r ? 0 : r - l + 1; }
};

template <class Bits>
class WaveletTree {
 public:
  WaveletTree() = default;
  // seq[i] is the value at position i+1.
  WaveletTree(std::span<const Weight> seq, Weight sigma);

  std::size_t size() const { return n_; }
  Weight sigma() const { return sigma_; }
  unsigned levels() const { return static_cast<unsigned>(levels_.size()); }

  Weight access(std::size_t i) const;
  // k-th smallest (0-based) over the union of pairwise disjoint intervals.
  Weight quantile_multi(std::span<const PosInterval> intervals, std::size_t k) const;
  // |{ i in [l, r] : a <= seq[i] <= b }|
  std::size_t count_2d(std::size_t l, std::size_t r, Weight a, Weight b) const;
  // Appends (position, weight) for every qualifying position, unordered.
  void report_2d(std::size_t l, std::size_t r, Weight a, Weight b,
                 std::vector<std::pair<std::size_t, Weight>>& out) const;

  std::size_t size_in_bits() const;

 private:
  struct Node {
    std::size_t s, e;  // slice [s, e] at the node's level
    Weight lo, hi;
  };
  Node root() const { return Node{1, n_, 1, sigma_}; }
  // Zeros in the node slice at level d.
  std::size_t zeros(unsigned d, const Node& v) const {
    return levels_[d].rank0(v.e + 1) - levels_[d].rank0(v.s);
  }
  std::size_t count_rec(unsigned d, const Node& v, std::size_t l, std::size_t r, Weight a, Weight b) const;
  struct Step {
    std::size_t parent_s;
    bool right;
    std::size_t child_s;
  };
  void report_rec(unsigned d, const Node& v, std::size_t l, std::size_t r, Weight a, Weight b,
                  std::vector<Step>& path, std::vector<std::pair<std::size_t, Weight>>& out) const;
  std::size_t to_root_position(std::size_t pos, const std::vector<Step>& path) const;

  std::vector<Bits> levels_;
  std::size_t n_ = 0;
  Weight sigma_ = 1;
};

// ---------------------------------------------------------------------------

template <class Bits>
WaveletTree<Bits>::WaveletTree(std::span<const Weight> seq, Weight sigma) : n_(seq.size()), sigma_(sigma) {
  if (sigma < 1) throw std::invalid_argument("WaveletTree: sigma must be >= 1");
  for (Weight w : seq)
    if (w < 1 || w > sigma) throw std::invalid_argument("WaveletTree: value outside [1..sigma]");
  unsigned depth = ceil_log2(sigma);
  std::vector<Weight> cur(seq.begin(), seq.end()), next(n_);
  std::vector<Node> nodes{root()}, next_nodes;
  if (n_ == 0) nodes.clear();
  levels_.reserve(depth);
  for (unsigned d = 0; d < depth; ++d) {
    RawBits raw(n_);
    next_nodes.clear();
    for (const Node& v : nodes) {
      if (v.lo == v.hi) {
        for (std::size_t i = v.s; i <= v.e; ++i) next[i - 1] = cur[i - 1];
        next_nodes.push_back(v);
        continue;
      }
      Weight mid = v.lo + (v.hi - v.lo) / 2;
      std::size_t z = 0;
      for (std::size_t i = v.s; i <= v.e; ++i) z += cur[i - 1] <= mid;
      std::size_t lpos = v.s, rpos = v.s + z;
      for (std::size_t i = v.s; i <= v.e; ++i) {
        Weight w = cur[i - 1];
        if (w <= mid) {
          next[lpos++ - 1] = w;
        } else {
          raw.set(i - 1, true);
          next[rpos++ - 1] = w;
        }
      }
      if (z > 0) next_nodes.push_back(Node{v.s, v.s + z - 1, v.lo, mid});
      if (v.s + z <= v.e) next_nodes.push_back(Node{v.s + z, v.e, mid + 1, v.hi});
    }
    levels_.emplace_back(raw);
    std::swap(cur, next);
    std::swap(nodes, next_nodes);
  }
}

template <class Bits>
Weight WaveletTree<Bits>::access(std::size_t i) const {
  if (i < 1 || i > n_) throw std::out_of_range("WaveletTree::access: position out of range");
  Node v = root();
  for (unsigned d = 0; v.lo < v.hi; ++d) {
    const Bits& bv = levels_[d];
    std::size_t z = zeros(d, v);
    Weight mid = v.lo + (v.hi - v.lo) / 2;
    if (!bv.get(i)) {
      i = v.s + (bv.rank0(i) - bv.rank0(v.s));
      v = Node{v.s, v.s + z - 1, v.lo, mid};
    } else {
      i = v.s + z + (bv.rank1(i) - bv.rank1(v.s));
      v = Node{v.s + z, v.e, mid + 1, v.hi};
    }
  }
  return v.lo;
}

template <class Bits>
Weight WaveletTree<Bits>::quantile_multi(std::span<const PosInterval> intervals, std::size_t k) const {
  std::size_t total = 0;
  std::vector<PosInterval> cur;
  cur.reserve(intervals.size());
  for (const auto& iv : intervals) {
    if (iv.length() == 0) continue;
    if (iv.l < 1 || iv.r > n_) throw std::out_of_range("quantile_multi: interval out of range");
    total += iv.length();
    cur.push_back(iv);
  }
  if (k >= total) throw std::out_of_range("quantile_multi: rank exceeds interval sizes");
  std::vector<std::pair<std::size_t, std::size_t>> zr(cur.size());  // zeros before l, through r
  Node v = root();
  for (unsigned d = 0; v.lo < v.hi; ++d) {
    const Bits& bv = levels_[d];
    std::size_t rs = bv.rank0(v.s);
    std::size_t z = bv.rank0(v.e + 1) - rs;
    std::size_t left = 0;
    for (std::size_t j = 0; j < cur.size(); ++j) {
      zr[j] = {bv.rank0(cur[j].l) - rs, bv.rank0(cur[j].r + 1) - rs};
      left += zr[j].second - zr[j].first;
    }
    Weight mid = v.lo + (v.hi - v.lo) / 2;
    std::size_t s = v.s;
    if (k < left) {
      for (std::size_t j = 0; j < cur.size(); ++j) cur[j] = PosInterval{s + zr[j].first, s + zr[j].second - 1};
      v = Node{s, s + z - 1, v.lo, mid};
    } else {
      k -= left;
      for (std::size_t j = 0; j < cur.size(); ++j) {
        std::size_t ol = (cur[j].l - s) - zr[j].first, orr = (cur[j].r + 1 - s) - zr[j].second;
        cur[j] = PosInterval{s + z + ol, s + z + orr - 1};
      }
      v = Node{s + z, v.e, mid + 1, v.hi};
    }
  }
  return v.lo;
}

template <class Bits>
std::size_t WaveletTree<Bits>::count_2d(std::size_t l, std::size_t r, Weight a, Weight b) const {
  if (l < 1 || r > n_ || l > r) throw std::out_of_range("count_2d: bad interval");
  if (a < 1 || b > sigma_ || a > b) throw std::out_of_range("count_2d: bad weight range");
  return count_rec(0, root(), l, r, a, b);
}

template <class Bits>
std::size_t WaveletTree<Bits>::count_rec(unsigned d, const Node& v, std::size_t l, std::size_t r, Weight a,
                                         Weight b) const {
  if (l > r || b < v.lo || a > v.hi) return 0;
  if (a <= v.lo && v.hi <= b) return r - l + 1;
  const Bits& bv = levels_[d];
  std::size_t rs = bv.rank0(v.s);
  std::size_t z = bv.rank0(v.e + 1) - rs;
  std::size_t zl = bv.rank0(l) - rs, zr = bv.rank0(r + 1) - rs;
  Weight mid = v.lo + (v.hi - v.lo) / 2;
  std::size_t res = count_rec(d + 1, Node{v.s, v.s + z - 1, v.lo, mid}, v.s + zl, v.s + zr - 1, a, b);
  std::size_t ol = (l - v.s) - zl, orr = (r + 1 - v.s) - zr;
  res += count_rec(d + 1, Node{v.s + z, v.e, mid + 1, v.hi}, v.s + z + ol, v.s + z + orr - 1, a, b);
  return res;
}

template <class Bits>
void WaveletTree<Bits>::report_2d(std::size_t l, std::size_t r, Weight a, Weight b,
                                  std::vector<std::pair<std::size_t, Weight>>& out) const {
  if (l < 1 || r > n_ || l > r) throw std::out_of_range("report_2d: bad interval");
  if (a < 1 || b > sigma_ || a > b) throw std::out_of_range("report_2d: bad weight range");
  std::vector<Step> path;
  report_rec(0, root(), l, r, a, b, path, out);
}

template <class Bits>
void WaveletTree<Bits>::report_rec(unsigned d, const Node& v, std::size_t l, std::size_t r, Weight a, Weight b,
                                   std::vector<Step>& path,
                                   std::vector<std::pair<std::size_t, Weight>>& out) const {
  if (l > r || b < v.lo || a > v.hi) return;
  if (v.lo == v.hi) {
    for (std::size_t p = l; p <= r; ++p) out.emplace_back(to_root_position(p, path), v.lo);
    return;
  }
  const Bits& bv = levels_[d];
  std::size_t rs = bv.rank0(v.s);
  std::size_t z = bv.rank0(v.e + 1) - rs;
  std::size_t zl = bv.rank0(l) - rs, zr = bv.rank0(r + 1) - rs;
  Weight mid = v.lo + (v.hi - v.lo) / 2;
  path.push_back(Step{v.s, false, v.s});
  report_rec(d + 1, Node{v.s, v.s + z - 1, v.lo, mid}, v.s + zl, v.s + zr - 1, a, b, path, out);
  path.back() = Step{v.s, true, v.s + z};
  std::size_t ol = (l - v.s) - zl, orr = (r + 1 - v.s) - zr;
  report_rec(d + 1, Node{v.s + z, v.e, mid + 1, v.hi}, v.s + z + ol, v.s + z + orr - 1, a, b, path, out);
  path.pop_back();
}

template <class Bits>
std::size_t WaveletTree<Bits>::to_root_position(std::size_t pos, const std::vector<Step>& path) const {
  for (std::size_t i = path.size(); i-- > 0;) {
    const Step& st = path[i];
    const Bits& bv = levels_[i];
    std::size_t k = pos - st.child_s + 1;
    pos = bv.select(st.right, bv.rank(st.right, st.parent_s) + k);
  }
  return pos;
}

template <class Bits>
std::size_t WaveletTree<Bits>::size_in_bits() const {
  std::size_t s = 3 * 64;
  for (const auto& l : levels_) s += l.size_in_bits();
  return s;
}

extern template class WaveletTree<PlainBitVector>;
extern template class WaveletTree<RrrBitVector>;
extern template class WaveletTree<ExplicitBits>;

}  // namespace treepath
