#include "treepath/bitvec.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace treepath {

RawBits::RawBits(std::size_t n, bool value) : words_((n + 63) / 64, value ? ~uint64_t{0} : 0), size_(n) {
  if (value && (n & 63)) words_.back() &= bits::low_mask(n & 63);
}

RawBits RawBits::from_string(std::string_view s) {
  RawBits r;
  for (char c : s) {
    if (c == '1' || c == '(') r.push_back(true);
    else if (c == '0' || c == ')') r.push_back(false);
    else throw std::invalid_argument("RawBits: unexpected character in bit string");
  }
  return r;
}

std::string RawBits::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) if (get(i)) s[i] = '1';
  return s;
}

namespace {

void check_rank_arg(std::size_t i, std::size_t size) {
  if (i < 1 || i > size + 1) throw std::out_of_range("rank: position out of range");
}
void check_access_arg(std::size_t i, std::size_t size) {
  if (i < 1 || i > size) throw std::out_of_range("access: position out of range");
}
void check_select_arg(std::size_t j, std::size_t count) {
  if (j < 1 || j > count) throw std::out_of_range("select: no such bit");
}

}  // namespace

// ---------------------------------------------------------------------------
// PlainBitVector

namespace {
constexpr std::size_t kPlainBlockBits = 512;
constexpr std::size_t kSelectSample = 4096;
}  // namespace

PlainBitVector::PlainBitVector(const RawBits& raw) : words_(raw.words()), size_(raw.size()) {
  std::size_t nblocks = (size_ + kPlainBlockBits - 1) / kPlainBlockBits;
  dir_.resize(nblocks + 1);
  std::size_t acc = 0;
  std::size_t seen[2] = {0, 0};
  for (std::size_t b = 0; b < nblocks; ++b) {
    dir_[b] = acc;
    std::size_t bits_in_block = std::min(kPlainBlockBits, size_ - b * kPlainBlockBits);
    std::size_t block_ones = 0;
    for (std::size_t w = b * 8; w < std::min(words_.size(), b * 8 + 8); ++w) block_ones += std::popcount(words_[w]);
    std::size_t block_zeros = bits_in_block - block_ones;
    // a hint marks the block holding the (h*4096+1)-th t-bit
    std::size_t got[2] = {block_zeros, block_ones};
    for (int t = 0; t < 2; ++t) {
      while (hints_[t].size() * kSelectSample < seen[t] + got[t]) hints_[t].push_back(static_cast<uint32_t>(b));
      seen[t] += got[t];
    }
    acc += block_ones;
  }
  dir_[nblocks] = acc;
  ones_ = acc;
}

bool PlainBitVector::access(std::size_t i) const {
  check_access_arg(i, size_);
  return get(i);
}

std::size_t PlainBitVector::rank(bool t, std::size_t i) const {
  check_rank_arg(i, size_);
  return t ? rank1(i) : rank0(i);
}

std::size_t PlainBitVector::select(bool t, std::size_t j) const {
  check_select_arg(j, count(t));
  return select_impl(t, j);
}

std::size_t PlainBitVector::select_impl(bool t, std::size_t j) const {
  auto before = [&](std::size_t b) -> std::size_t {
    return t ? dir_[b] : b * kPlainBlockBits - dir_[b];
  };
  std::size_t h = (j - 1) / kSelectSample;
  std::size_t lo = hints_[t][h];
  std::size_t hi = h + 1 < hints_[t].size() ? hints_[t][h + 1] : dir_.size() - 2;
  // last block in [lo, hi] with before(b) < j
  while (lo < hi) {
    std::size_t mid = (lo + hi + 1) / 2;
    if (before(mid) < j) lo = mid; else hi = mid - 1;
  }
  std::size_t rem = j - before(lo);
  for (std::size_t w = lo * 8;; ++w) {
    uint64_t word = t ? words_[w] : ~words_[w];
    std::size_t c = std::popcount(word);
    if (c >= rem) return w * 64 + bits::select_in_word(word, static_cast<unsigned>(rem)) + 1;
    rem -= c;
  }
}

void PlainBitVector::get_words(std::size_t first, std::size_t count, uint64_t* out) const {
  for (std::size_t k = 0; k < count; ++k) out[k] = first + k < words_.size() ? words_[first + k] : 0;
}

std::size_t PlainBitVector::size_in_bits() const {
  return words_.size() * 64 + dir_.size() * 64 + (hints_[0].size() + hints_[1].size()) * 32 + 2 * 64;
}

// ---------------------------------------------------------------------------
// RrrBitVector

namespace {

constexpr auto kBinom = [] {
  std::array<std::array<uint16_t, 16>, 16> c{};
  for (int n = 0; n < 16; ++n) {
    c[n][0] = 1;
    for (int k = 1; k <= n; ++k) c[n][k] = static_cast<uint16_t>(c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0));
  }
  return c;
}();

constexpr auto kWidth = [] {
  std::array<uint8_t, 16> w{};
  for (int k = 0; k < 16; ++k) {
    unsigned v = kBinom[15][k], b = 0;
    while ((1u << b) < v) ++b;
    w[k] = static_cast<uint8_t>(b);
  }
  return w;
}();

// Class sum and offset-width sum of the two blocks packed in one byte of classes.
struct PairSums {
  uint8_t ones, width;
};
constexpr auto kPairSums = [] {
  std::array<PairSums, 256> t{};
  for (unsigned v = 0; v < 256; ++v)
    t[v] = PairSums{static_cast<uint8_t>((v & 15) + (v >> 4)), static_cast<uint8_t>(kWidth[v & 15] + kWidth[v >> 4])};
  return t;
}();

inline uint16_t binom(unsigned n, unsigned k) { return k > n ? 0 : kBinom[n][k]; }

}  // namespace

unsigned RrrBitVector::offset_width(unsigned klass) { return kWidth[klass]; }

uint16_t RrrBitVector::encode_block(uint16_t bits, unsigned* klass) {
  // colex rank: sum over the i-th lowest set bit at position p of C(p, i)
  unsigned i = 0;
  uint16_t off = 0;
  for (unsigned p = 0; p < kBlock; ++p) {
    if (bits >> p & 1) off = static_cast<uint16_t>(off + binom(p, ++i));
  }
  *klass = i;
  return off;
}

namespace {

// All 2^15 block patterns grouped by class, in offset order within a class.
struct DecodeTable {
  std::array<uint16_t, 16> start{};
  std::array<uint16_t, 1u << 15> bits{};
};

const DecodeTable& decode_table() {
  static const DecodeTable table = [] {
    DecodeTable t;
    for (unsigned k = 1; k < 16; ++k) t.start[k] = static_cast<uint16_t>(t.start[k - 1] + kBinom[15][k - 1]);
    for (uint32_t v = 0; v < (1u << 15); ++v) {
      unsigned k;
      uint16_t off = RrrBitVector::encode_block(static_cast<uint16_t>(v), &k);
      t.bits[t.start[k] + off] = static_cast<uint16_t>(v);
    }
    return t;
  }();
  return table;
}

}  // namespace

uint16_t RrrBitVector::decode_block(unsigned klass, uint16_t offset) {
  const auto& t = decode_table();
  return t.bits[t.start[klass] + offset];
}

RrrBitVector::RrrBitVector(const RawBits& raw) : size_(raw.size()) {
  nblocks_ = (size_ + kBlock - 1) / kBlock;
  classes_.assign((nblocks_ + 15) / 16, 0);
  std::size_t nsuper = (nblocks_ + kSuper - 1) / kSuper;
  std::vector<std::size_t> sb_rank(nsuper + 1), sb_off(nsuper + 1);
  std::size_t off_pos = 0, rank = 0;
  RawBits offs;
  for (std::size_t b = 0; b < nblocks_; ++b) {
    if (b % kSuper == 0) {
      sb_rank[b / kSuper] = rank;
      sb_off[b / kSuper] = off_pos;
    }
    uint16_t v = 0;
    for (unsigned k = 0; k < kBlock; ++k) {
      std::size_t p = b * kBlock + k;
      if (p < size_ && raw.get(p)) v |= static_cast<uint16_t>(1u << k);
    }
    unsigned k;
    uint16_t off = encode_block(v, &k);
    classes_[b >> 4] |= uint64_t{k} << ((b & 15) * 4);
    for (unsigned w = 0; w < kWidth[k]; ++w) offs.push_back(off >> w & 1);
    off_pos += kWidth[k];
    rank += k;
  }
  sb_rank[nsuper] = rank;
  sb_off[nsuper] = off_pos;
  // absolute values per group of superblocks, 16-bit deltas per superblock
  abs_rank_.resize(nsuper / kGroup + 1);
  abs_off_.resize(nsuper / kGroup + 1);
  rel_.resize(nsuper + 1);
  for (std::size_t sb = 0; sb <= nsuper; ++sb) {
    std::size_t g = sb / kGroup;
    if (sb % kGroup == 0) {
      abs_rank_[g] = sb_rank[sb];
      abs_off_[g] = sb_off[sb];
    }
    rel_[sb] = static_cast<uint32_t>(sb_rank[sb] - abs_rank_[g]) |
               static_cast<uint32_t>(sb_off[sb] - abs_off_[g]) << 16;
  }
  offsets_ = offs.words();
  offsets_.push_back(0);  // read_offset may touch one word past the end
  ones_ = rank;
}

uint64_t RrrBitVector::read_offset(std::size_t pos, unsigned width) const {
  if (width == 0) return 0;
  std::size_t w = pos >> 6;
  unsigned sh = pos & 63;
  uint64_t v = offsets_[w] >> sh;
  if (sh + width > 64) v |= offsets_[w + 1] << (64 - sh);
  return v & bits::low_mask(width);
}

void RrrBitVector::locate(std::size_t blk, std::size_t* rank, std::size_t* off) const {
  std::size_t sb = blk / kSuper;
  std::size_t r = super_rank(sb), o = super_off(sb);
  std::size_t b = sb * kSuper;
  for (; b + 2 <= blk; b += 2) {
    const PairSums& p = kPairSums[(classes_[b >> 4] >> ((b & 15) * 4)) & 0xFF];
    r += p.ones;
    o += p.width;
  }
  if (b < blk) {
    unsigned k = klass(b);
    r += k;
    o += kWidth[k];
  }
  *rank = r;
  *off = o;
}

bool RrrBitVector::get(std::size_t i) const {
  std::size_t p = i - 1, blk = p / kBlock;
  unsigned k = klass(blk);
  if (k == 0) return false;
  if (k == kBlock) return true;
  std::size_t r, o;
  locate(blk, &r, &o);
  uint16_t bits = decode_block(k, static_cast<uint16_t>(read_offset(o, kWidth[k])));
  return bits >> (p % kBlock) & 1;
}

std::size_t RrrBitVector::rank1(std::size_t i) const {
  std::size_t p = i - 1, blk = p / kBlock;
  unsigned in = p % kBlock;
  if (blk >= nblocks_) return ones_;
  std::size_t r, o;
  locate(blk, &r, &o);
  if (in == 0) return r;
  unsigned k = klass(blk);
  if (k == 0) return r;
  if (k == kBlock) return r + in;
  uint16_t bits = decode_block(k, static_cast<uint16_t>(read_offset(o, kWidth[k])));
  return r + std::popcount(static_cast<unsigned>(bits & ((1u << in) - 1)));
}

bool RrrBitVector::access(std::size_t i) const {
  check_access_arg(i, size_);
  return get(i);
}

std::size_t RrrBitVector::rank(bool t, std::size_t i) const {
  check_rank_arg(i, size_);
  return t ? rank1(i) : rank0(i);
}

std::size_t RrrBitVector::select(bool t, std::size_t j) const {
  check_select_arg(j, count(t));
  constexpr std::size_t kSuperBits = kSuper * kBlock;
  auto before = [&](std::size_t sb) -> std::size_t {
    return t ? super_rank(sb) : sb * kSuperBits - super_rank(sb);
  };
  std::size_t lo = 0, hi = rel_.size() - 2;
  while (lo < hi) {
    std::size_t mid = (lo + hi + 1) / 2;
    if (before(mid) < j) lo = mid; else hi = mid - 1;
  }
  std::size_t rem = j - before(lo);
  std::size_t o = super_off(lo);
  for (std::size_t b = lo * kSuper;; ++b) {
    unsigned k = klass(b);
    std::size_t c = t ? k : kBlock - k;
    if (c >= rem) {
      uint16_t bits = decode_block(k, static_cast<uint16_t>(read_offset(o, kWidth[k])));
      uint64_t word = t ? bits : static_cast<uint16_t>(~bits) & 0x7FFF;
      return b * kBlock + bits::select_in_word(word, static_cast<unsigned>(rem)) + 1;
    }
    rem -= c;
    o += kWidth[k];
  }
}

void RrrBitVector::get_words(std::size_t first, std::size_t count, uint64_t* out) const {
  std::fill(out, out + count, 0);
  std::size_t start = first * 64, end = std::min(size_, (first + count) * 64);
  if (start >= end) return;
  std::size_t blk = start / kBlock;
  std::size_t r, o;
  locate(blk, &r, &o);
  for (std::size_t bpos = blk * kBlock; bpos < end; bpos += kBlock, ++blk) {
    unsigned k = klass(blk);
    uint64_t bits = k == kBlock ? 0x7FFF : decode_block(k, static_cast<uint16_t>(read_offset(o, kWidth[k])));
    o += kWidth[k];
    if (bits == 0) continue;
    // place block bits at absolute positions bpos.. relative to start
    if (bpos < start) {
      bits >>= (start - bpos);
      out[0] |= bits;
      continue;
    }
    std::size_t rel = bpos - start;
    std::size_t w = rel >> 6;
    unsigned sh = rel & 63;
    if (w < count) out[w] |= bits << sh;
    if (sh + kBlock > 64 && w + 1 < count) out[w + 1] |= bits >> (64 - sh);
  }
  std::size_t valid = end - start;
  if (valid < count * 64) {
    std::size_t w = valid >> 6;
    if (w < count) out[w] &= bits::low_mask(valid & 63);
    for (std::size_t k = w + 1; k < count; ++k) out[k] = 0;
  }
}

std::size_t RrrBitVector::size_in_bits() const {
  return classes_.size() * 64 + offsets_.size() * 64 + rel_.size() * 32 + (abs_rank_.size() + abs_off_.size()) * 64 +
         3 * 64;
}

// ---------------------------------------------------------------------------
// ExplicitBits

ExplicitBits::ExplicitBits(const RawBits& raw) : prefix_(raw.size() + 1) {
  prefix_[0] = 0;
  for (std::size_t i = 0; i < raw.size(); ++i) prefix_[i + 1] = prefix_[i] + (raw.get(i) ? 1 : 0);
}

bool ExplicitBits::access(std::size_t i) const {
  check_access_arg(i, size());
  return get(i);
}

std::size_t ExplicitBits::rank(bool t, std::size_t i) const {
  check_rank_arg(i, size());
  return t ? rank1(i) : rank0(i);
}

std::size_t ExplicitBits::select(bool t, std::size_t j) const {
  check_select_arg(j, count(t));
  // first i with rank_t(i+1) == j
  std::size_t lo = 1, hi = size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    std::size_t c = t ? prefix_[mid] : mid - prefix_[mid];
    if (c >= j) hi = mid; else lo = mid + 1;
  }
  return lo;
}

void ExplicitBits::get_words(std::size_t first, std::size_t count, uint64_t* out) const {
  for (std::size_t k = 0; k < count; ++k) {
    uint64_t w = 0;
    for (unsigned b = 0; b < 64; ++b) {
      std::size_t pos = (first + k) * 64 + b + 1;
      if (pos <= size() && get(pos)) w |= uint64_t{1} << b;
    }
    out[k] = w;
  }
}

// ---------------------------------------------------------------------------
// BitVector

BitVector BitVector::build(const RawBits& raw, Encoding enc) {
  BitVector bv;
  if (enc == Encoding::Plain) bv.impl_ = PlainBitVector(raw);
  else bv.impl_ = RrrBitVector(raw);
  return bv;
}

std::size_t BitVector::size() const {
  return std::visit([](const auto& v) { return v.size(); }, impl_);
}
std::size_t BitVector::count(bool t) const {
  return std::visit([t](const auto& v) { return v.count(t); }, impl_);
}
bool BitVector::access(std::size_t i) const {
  return std::visit([i](const auto& v) { return v.access(i); }, impl_);
}
std::size_t BitVector::rank(bool t, std::size_t i) const {
  return std::visit([t, i](const auto& v) { return v.rank(t, i); }, impl_);
}
std::size_t BitVector::select(bool t, std::size_t j) const {
  return std::visit([t, j](const auto& v) { return v.select(t, j); }, impl_);
}
std::size_t BitVector::size_in_bits() const {
  return std::visit([](const auto& v) { return v.size_in_bits(); }, impl_);
}

// ---------------------------------------------------------------------------
// IntVector

IntVector::IntVector(std::size_t n, unsigned width)
    : words_((n * width + 63) / 64 + 1, 0), size_(n), width_(width) {
  if (width > 64) throw std::invalid_argument("IntVector: width > 64");
}

uint64_t IntVector::get(std::size_t i) const {
  if (width_ == 0) return 0;
  std::size_t pos = i * width_;
  std::size_t w = pos >> 6;
  unsigned sh = pos & 63;
  uint64_t v = words_[w] >> sh;
  if (sh + width_ > 64) v |= words_[w + 1] << (64 - sh);
  return v & bits::low_mask(width_);
}

void IntVector::set(std::size_t i, uint64_t v) {
  if (width_ == 0) return;
  v &= bits::low_mask(width_);
  std::size_t pos = i * width_;
  std::size_t w = pos >> 6;
  unsigned sh = pos & 63;
  words_[w] = (words_[w] & ~(bits::low_mask(width_) << sh)) | (v << sh);
  if (sh + width_ > 64) {
    unsigned spill = sh + width_ - 64;
    words_[w + 1] = (words_[w + 1] & ~bits::low_mask(spill)) | (v >> (64 - sh));
  }
}

}  // namespace treepath
