#pragma once

// Balanced-parentheses ordinal trees (forests) with a block min-excess tree.
//
// Bit 1 is "(" and bit 0 is ")". Node x is the x-th opening parenthesis; ids
// are preorder ranks. The sequence may hold several consecutive trees, in
// which case their roots all have depth 0 and nodes in different trees have
// no common ancestor.
//
// Excess E(p) = (#open - #close) over positions 1..p, with E(0) = 0. Blocks of
// 512 bits keep their minimum excess; a segment tree over those minima drives
// forward/backward searches, so navigation costs O(log n) block steps plus a
// bytewise scan of at most two blocks.

#include <algorithm>
#include <array>
#include <climits>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treepath/bitvec.hpp"
#include "treepath/types.hpp"

namespace treepath {

namespace bp_detail {

struct ByteTables {
  std::array<int8_t, 256> delta;    // total excess change over the byte
  std::array<int8_t, 256> min_fwd;  // min prefix over 1..8 bits
  std::array<int8_t, 256> min_bwd;  // min prefix over 0..7 bits
};

inline constexpr ByteTables kTables = [] {
  ByteTables t{};
  for (int v = 0; v < 256; ++v) {
    int e = 0, mf = 8, mb = 0;
    for (int b = 0; b < 8; ++b) {
      mb = std::min(mb, e);
      e += (v >> b & 1) ? 1 : -1;
      mf = std::min(mf, e);
    }
    t.delta[v] = static_cast<int8_t>(e);
    t.min_fwd[v] = static_cast<int8_t>(mf);
    t.min_bwd[v] = static_cast<int8_t>(mb);
  }
  return t;
}();

}  // namespace bp_detail

// BP bits of a forest given parents in preorder: parent[x] < x, 0 for roots.
// parent is indexed 1..n (parent[0] ignored).
RawBits bp_from_parents(std::span<const NodeId> parent);

template <class Bits>
class BpTree {
 public:
  static constexpr std::size_t kBlockBits = 512;
  static constexpr std::size_t npos = SIZE_MAX;

  BpTree() = default;
  explicit BpTree(const RawBits& bp);

  std::size_t nodes() const { return n_; }
  std::size_t length() const { return m_; }

  // Position of node x's opening parenthesis and the inverse map.
  std::size_t open(NodeId x) const { return bits_.select(true, x); }
  NodeId node_at(std::size_t p) const { return static_cast<NodeId>(bits_.rank1(p + 1)); }
  std::size_t close(NodeId x) const { return fwd_search(open(x), excess(open(x)) - 1); }

  // Root (of its tree) has depth 0.
  uint32_t depth(NodeId x) const {
    std::size_t p = open(x);
    return static_cast<uint32_t>(2 * static_cast<std::size_t>(x) - p - 1);
  }
  std::optional<NodeId> parent(NodeId x) const;
  // Ancestor i edges above x; requires i <= depth(x).
  NodeId level_anc(NodeId x, uint32_t i) const;
  // None when x and y lie in different trees of the forest.
  std::optional<NodeId> lca(NodeId x, NodeId y) const;
  // i-th child (1-based), left to right.
  std::optional<NodeId> child(NodeId x, std::size_t i) const;
  bool is_ancestor(NodeId anc, NodeId x) const;
  std::size_t subtree_size(NodeId x) const { return (close(x) - open(x) + 1) / 2; }

  std::string to_string() const;
  std::size_t size_in_bits() const { return bits_.size_in_bits() + tree_.size() * 32 + 3 * 64; }
  const Bits& bits() const { return bits_; }

  // Excess primitives, exposed for tests.
  int64_t excess(std::size_t p) const {
    return p == 0 ? 0 : 2 * static_cast<int64_t>(bits_.rank1(p + 1)) - static_cast<int64_t>(p);
  }
  // Smallest q > p with E(q) == target; target < E(p).
  std::size_t fwd_search(std::size_t p, int64_t target) const;
  // Largest q < p (q >= 0) with E(q) == target; target < E(p).
  std::size_t bwd_search(std::size_t p, int64_t target) const;
  // min E(q) for q in [p, q].
  int64_t range_min(std::size_t p, std::size_t q) const;

 private:
  using Block = std::array<uint64_t, kBlockBits / 64>;

  // Loads the words of block b covering bit indexes [from, to) of the block.
  void load_block(std::size_t b, Block& buf, std::size_t from, std::size_t to) const {
    std::size_t w0 = from >> 6, w1 = (to + 63) >> 6;
    if (w1 > w0) bits_.get_words(b * (kBlockBits / 64) + w0, w1 - w0, buf.data() + w0);
  }
  static int step(const Block& buf, std::size_t idx_in_block) {
    return (buf[idx_in_block >> 6] >> (idx_in_block & 63) & 1) ? 1 : -1;
  }
  static unsigned byte_at(const Block& buf, std::size_t idx_in_block) {
    return static_cast<unsigned>(buf[idx_in_block >> 6] >> (idx_in_block & 63)) & 0xFF;
  }

  // Scans positions q in (q_from, q_to] of one block forward; cur = E(q_from).
  std::size_t scan_fwd(std::size_t q_from, int64_t cur, std::size_t q_to, int64_t target) const;
  // Scans positions q in [q_to, q_from) of one block backward; cur = E(q_from).
  std::size_t scan_bwd(std::size_t q_from, int64_t cur, std::size_t q_to, int64_t target) const;
  int64_t min_fwd(std::size_t q_from, int64_t cur, std::size_t q_to) const;

  std::size_t next_block_leq(std::size_t b, int64_t target) const;
  std::size_t prev_block_leq(std::size_t b, int64_t target) const;
  int64_t block_range_min(std::size_t b1, std::size_t b2) const;

  Bits bits_;
  std::vector<int32_t> tree_;  // segment tree over block minima; leaves at leaves_..
  std::size_t leaves_ = 1;
  std::size_t nblocks_ = 0;
  std::size_t n_ = 0;
  std::size_t m_ = 0;
};

// ---------------------------------------------------------------------------

template <class Bits>
BpTree<Bits>::BpTree(const RawBits& bp) : bits_(bp), m_(bp.size()) {
  n_ = bits_.ones();
  nblocks_ = (m_ + kBlockBits - 1) / kBlockBits;
  while (leaves_ < std::max<std::size_t>(nblocks_, 1)) leaves_ <<= 1;
  tree_.assign(2 * leaves_, INT32_MAX);
  int64_t e = 0;
  for (std::size_t b = 0; b < nblocks_; ++b) {
    int64_t mn = INT64_MAX;
    std::size_t end = std::min(m_, (b + 1) * kBlockBits);
    for (std::size_t i = b * kBlockBits; i < end; ++i) {
      e += bp.get(i) ? 1 : -1;
      mn = std::min(mn, e);
    }
    tree_[leaves_ + b] = static_cast<int32_t>(mn);
  }
  for (std::size_t i = leaves_ - 1; i >= 1; --i) tree_[i] = std::min(tree_[2 * i], tree_[2 * i + 1]);
}

template <class Bits>
std::size_t BpTree<Bits>::scan_fwd(std::size_t q_from, int64_t cur, std::size_t q_to, int64_t target) const {
  if (q_from >= q_to) return npos;
  std::size_t b = q_from / kBlockBits;  // block holding bit index q_from, i.e. position q_from+1
  std::size_t base = b * kBlockBits;
  const auto& T = bp_detail::kTables;
  std::size_t i = q_from - base;       // bit index within block of position q_from+1
  std::size_t lim = q_to - base;       // stop after bit index lim-1
  Block buf;
  load_block(b, buf, i & ~std::size_t{7}, lim);
  while (i < lim) {
    if ((i & 7) == 0 && i + 8 <= lim) {
      unsigned v = byte_at(buf, i);
      if (cur + T.min_fwd[v] > target) {
        cur += T.delta[v];
        i += 8;
        continue;
      }
    }
    cur += step(buf, i);
    ++i;
    if (cur == target) return base + i;
  }
  return npos;
}

template <class Bits>
std::size_t BpTree<Bits>::scan_bwd(std::size_t q_from, int64_t cur, std::size_t q_to, int64_t target) const {
  if (q_from <= q_to) return npos;
  std::size_t b = (q_from - 1) / kBlockBits;  // block holding bit index q_from-1
  std::size_t base = b * kBlockBits;
  const auto& T = bp_detail::kTables;
  std::size_t i = q_from - base;  // we step over bit index i-1 to reach position i-1
  std::size_t lim = q_to - base;
  Block buf;
  load_block(b, buf, lim, i);
  while (i > lim) {
    if ((i & 7) == 0 && i >= lim + 8) {
      unsigned v = byte_at(buf, i - 8);
      int64_t start = cur - T.delta[v];  // E at position i-8
      if (start + T.min_bwd[v] > target) {
        cur = start;
        i -= 8;
        continue;
      }
    }
    cur -= step(buf, i - 1);
    --i;
    if (cur == target) return base + i;
  }
  return npos;
}

template <class Bits>
int64_t BpTree<Bits>::min_fwd(std::size_t q_from, int64_t cur, std::size_t q_to) const {
  int64_t mn = cur;
  if (q_from >= q_to) return mn;
  std::size_t b = q_from / kBlockBits;
  std::size_t base = b * kBlockBits;
  const auto& T = bp_detail::kTables;
  std::size_t i = q_from - base, lim = q_to - base;
  Block buf;
  load_block(b, buf, i, lim);
  while (i < lim) {
    if ((i & 7) == 0 && i + 8 <= lim) {
      unsigned v = byte_at(buf, i);
      mn = std::min<int64_t>(mn, cur + T.min_fwd[v]);
      cur += T.delta[v];
      i += 8;
      continue;
    }
    cur += step(buf, i);
    ++i;
    mn = std::min(mn, cur);
  }
  return mn;
}

template <class Bits>
std::size_t BpTree<Bits>::next_block_leq(std::size_t b, int64_t target) const {
  std::size_t i = b + leaves_;
  for (;;) {
    if (i == 1) return npos;
    if ((i & 1) == 0 && tree_[i + 1] <= target) {
      ++i;
      break;
    }
    i >>= 1;
  }
  while (i < leaves_) {
    i <<= 1;
    if (tree_[i] > target) ++i;
  }
  return i - leaves_;
}

template <class Bits>
std::size_t BpTree<Bits>::prev_block_leq(std::size_t b, int64_t target) const {
  std::size_t i = b + leaves_;
  for (;;) {
    if (i == 1) return npos;
    if ((i & 1) == 1 && tree_[i - 1] <= target) {
      --i;
      break;
    }
    i >>= 1;
  }
  while (i < leaves_) {
    i = 2 * i + 1;
    if (tree_[i] > target) --i;
  }
  return i - leaves_;
}

template <class Bits>
int64_t BpTree<Bits>::block_range_min(std::size_t b1, std::size_t b2) const {
  int64_t mn = INT64_MAX;
  for (std::size_t l = b1 + leaves_, r = b2 + leaves_ + 1; l < r; l >>= 1, r >>= 1) {
    if (l & 1) mn = std::min<int64_t>(mn, tree_[l++]);
    if (r & 1) mn = std::min<int64_t>(mn, tree_[--r]);
  }
  return mn;
}

template <class Bits>
std::size_t BpTree<Bits>::fwd_search(std::size_t p, int64_t target) const {
  if (p >= m_) return npos;
  int64_t cur = excess(p);
  std::size_t b = p / kBlockBits;
  std::size_t end = std::min(m_, (b + 1) * kBlockBits);
  std::size_t q = scan_fwd(p, cur, end, target);
  if (q != npos) return q;
  std::size_t nb = next_block_leq(b, target);
  if (nb == npos || nb >= nblocks_) return npos;
  std::size_t start = nb * kBlockBits;
  return scan_fwd(start, excess(start), std::min(m_, start + kBlockBits), target);
}

template <class Bits>
std::size_t BpTree<Bits>::bwd_search(std::size_t p, int64_t target) const {
  if (p == 0) return npos;
  int64_t cur = excess(p - 1);
  if (cur == target) return p - 1;
  if (p - 1 == 0) return npos;
  std::size_t b = (p - 2) / kBlockBits;  // block holding bit index p-2
  std::size_t q = scan_bwd(p - 1, cur, b * kBlockBits, target);
  if (q != npos) return q;
  if (b > 0) {
    std::size_t pb = prev_block_leq(b, target);
    if (pb != npos) {
      std::size_t end = (pb + 1) * kBlockBits;
      int64_t e = excess(end);
      if (e == target) return end;
      q = scan_bwd(end, e, pb * kBlockBits, target);
      if (q != npos) return q;
    }
  }
  return target == 0 ? 0 : npos;
}

template <class Bits>
int64_t BpTree<Bits>::range_min(std::size_t p, std::size_t q) const {
  std::size_t b = p / kBlockBits;  // block holding position p+1
  std::size_t end = std::min(q, (b + 1) * kBlockBits);
  int64_t mn = min_fwd(p, excess(p), end);
  if (end == q) return mn;
  std::size_t bq = (q - 1) / kBlockBits;
  if (bq > b + 1) mn = std::min(mn, block_range_min(b + 1, bq - 1));
  std::size_t start = bq * kBlockBits;
  return std::min(mn, min_fwd(start, excess(start), q));
}

template <class Bits>
std::optional<NodeId> BpTree<Bits>::parent(NodeId x) const {
  std::size_t p = open(x);
  int64_t e = 2 * static_cast<int64_t>(x) - static_cast<int64_t>(p);
  if (e <= 1) return std::nullopt;
  std::size_t q = bwd_search(p, e - 2);
  return node_at(q + 1);
}

template <class Bits>
NodeId BpTree<Bits>::level_anc(NodeId x, uint32_t i) const {
  if (i == 0) return x;
  std::size_t p = open(x);
  int64_t e = 2 * static_cast<int64_t>(x) - static_cast<int64_t>(p);
  int64_t target = e - static_cast<int64_t>(i) - 1;
  if (target < 0) throw std::out_of_range("level_anc: above the root");
  std::size_t q = bwd_search(p, target);
  return node_at(q + 1);
}

template <class Bits>
std::optional<NodeId> BpTree<Bits>::lca(NodeId x, NodeId y) const {
  if (x == y) return x;
  if (x > y) std::swap(x, y);
  std::size_t p = open(x), q = open(y);
  int64_t mn = range_min(p, q);
  if (mn < 1) return std::nullopt;
  std::size_t r = bwd_search(p, mn - 1);
  return node_at(r + 1);
}

template <class Bits>
std::optional<NodeId> BpTree<Bits>::child(NodeId x, std::size_t i) const {
  if (i == 0) return std::nullopt;
  std::size_t p = open(x);
  std::size_t c = p + 1;
  if (c > m_ || !bits_.get(c)) return std::nullopt;
  for (std::size_t k = 1; k < i; ++k) {
    c = fwd_search(c, excess(c) - 1) + 1;
    if (c > m_ || !bits_.get(c)) return std::nullopt;
  }
  return node_at(c);
}

template <class Bits>
bool BpTree<Bits>::is_ancestor(NodeId anc, NodeId x) const {
  if (anc > x) return false;
  if (anc == x) return true;
  return open(x) < close(anc);
}

template <class Bits>
std::string BpTree<Bits>::to_string() const {
  std::string s(m_, ')');
  for (std::size_t i = 1; i <= m_; ++i)
    if (bits_.get(i)) s[i - 1] = '(';
  return s;
}

extern template class BpTree<PlainBitVector>;
extern template class BpTree<RrrBitVector>;

}  // namespace treepath
