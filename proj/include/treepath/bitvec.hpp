#pragma once

// Static bit sequences with rank/select/access.
//
// Positions are 1-based. rank(t, i) counts t-bits at positions strictly less
// than i, so rank(t, 1) == 0 and rank(t, size()+1) is the total count of t.
// select(t, j) returns the position of the j-th t-bit.
//
// Two encodings share one interface:
//   PlainBitVector  - word array, one absolute rank sample per 512 bits and
//                     select hints every 4096 t-bits.
//   RrrBitVector    - 15-bit blocks stored as (class, offset) pairs with a
//                     superblock every 64 blocks (16-bit deltas against an
//                     absolute sample every 1024 blocks); offsets are
//                     decoded through a 64 KiB table of all block patterns.
// ExplicitBits stores a full prefix-count array (one word per bit) and backs
// the pointer-based index variants.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace treepath {

// Growable raw bit buffer used as build input for every bit vector.
class RawBits {
 public:
  RawBits() = default;
  explicit RawBits(std::size_t n, bool value = false);
  static RawBits from_string(std::string_view s);  // '1'/'(' -> 1, '0'/')' -> 0

  void push_back(bool b) {
    if ((size_ & 63) == 0) words_.push_back(0);
    if (b) words_.back() |= uint64_t{1} << (size_ & 63);
    ++size_;
  }
  // 0-based accessors.
  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i, bool b) {
    uint64_t m = uint64_t{1} << (i & 63);
    if (b) words_[i >> 6] |= m; else words_[i >> 6] &= ~m;
  }
  std::size_t size() const { return size_; }
  const std::vector<uint64_t>& words() const { return words_; }
  std::string to_string() const;

 private:
  std::vector<uint64_t> words_;
  std::size_t size_ = 0;
};

namespace bits {

// Position (0-based) of the j-th set bit of x, j >= 1, j <= popcount(x).
inline unsigned select_in_word(uint64_t x, unsigned j) {
  // skip whole bytes first, then bits
  unsigned pos = 0;
  for (;;) {
    unsigned c = std::popcount(x & 0xFF);
    if (c >= j) break;
    j -= c;
    x >>= 8;
    pos += 8;
  }
  for (;;) {
    if (x & 1) {
      if (--j == 0) return pos;
    }
    x >>= 1;
    ++pos;
  }
}

inline uint64_t low_mask(unsigned n) { return n >= 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1; }

}  // namespace bits

class PlainBitVector {
 public:
  PlainBitVector() = default;
  explicit PlainBitVector(const RawBits& raw);

  std::size_t size() const { return size_; }
  std::size_t ones() const { return ones_; }
  std::size_t count(bool t) const { return t ? ones_ : size_ - ones_; }

  bool access(std::size_t i) const;
  std::size_t rank(bool t, std::size_t i) const;
  std::size_t select(bool t, std::size_t j) const;

  // Unchecked fast paths (1-based as above).
  bool get(std::size_t i) const { return (words_[(i - 1) >> 6] >> ((i - 1) & 63)) & 1; }
  std::size_t rank1(std::size_t i) const {
    std::size_t p = i - 1;
    std::size_t blk = p >> 9;
    std::size_t r = dir_[blk];
    std::size_t w = blk << 3, end = p >> 6;
    for (; w < end; ++w) r += std::popcount(words_[w]);
    if (p & 63) r += std::popcount(words_[end] & bits::low_mask(p & 63));
    return r;
  }
  std::size_t rank0(std::size_t i) const { return (i - 1) - rank1(i); }

  // Copies `count` 64-bit words starting at word index `first` (bits
  // first*64 .. ) into out; bits past the end read as zero.
  void get_words(std::size_t first, std::size_t count, uint64_t* out) const;

  std::size_t size_in_bits() const;

 private:
  std::size_t select_impl(bool t, std::size_t j) const;

  std::vector<uint64_t> words_;
  std::vector<uint64_t> dir_;  // ones before each 512-bit block, plus a sentinel
  std::vector<uint32_t> hints_[2];
  std::size_t size_ = 0;
  std::size_t ones_ = 0;
};

class RrrBitVector {
 public:
  static constexpr unsigned kBlock = 15;
  static constexpr unsigned kSuper = 64;  // blocks per superblock
  static constexpr unsigned kGroup = 16;  // superblocks per absolute sample

  RrrBitVector() = default;
  explicit RrrBitVector(const RawBits& raw);

  std::size_t size() const { return size_; }
  std::size_t ones() const { return ones_; }
  std::size_t count(bool t) const { return t ? ones_ : size_ - ones_; }

  bool access(std::size_t i) const;
  std::size_t rank(bool t, std::size_t i) const;
  std::size_t select(bool t, std::size_t j) const;

  bool get(std::size_t i) const;
  std::size_t rank1(std::size_t i) const;
  std::size_t rank0(std::size_t i) const { return (i - 1) - rank1(i); }

  void get_words(std::size_t first, std::size_t count, uint64_t* out) const;

  std::size_t size_in_bits() const;

  // Combinatorial block coding, exposed for tests.
  static uint16_t encode_block(uint16_t bits, unsigned* klass);
  static uint16_t decode_block(unsigned klass, uint16_t offset);
  static unsigned offset_width(unsigned klass);

 private:
  unsigned klass(std::size_t blk) const {
    return (classes_[blk >> 4] >> ((blk & 15) * 4)) & 15;
  }
  uint64_t read_offset(std::size_t pos, unsigned width) const;
  // Offset bit position and rank before block `blk`.
  void locate(std::size_t blk, std::size_t* rank, std::size_t* off) const;

  std::vector<uint64_t> classes_;
  std::vector<uint64_t> offsets_;
  std::size_t super_rank(std::size_t sb) const { return abs_rank_[sb / kGroup] + (rel_[sb] & 0xFFFF); }
  std::size_t super_off(std::size_t sb) const { return abs_off_[sb / kGroup] + (rel_[sb] >> 16); }

  std::vector<uint64_t> abs_rank_;
  std::vector<uint64_t> abs_off_;
  std::vector<uint32_t> rel_;  // low 16 bits: rank delta, high 16: offset delta
  std::size_t nblocks_ = 0;
  std::size_t size_ = 0;
  std::size_t ones_ = 0;
};

// Prefix-count array: rank in one lookup, one 32-bit word per position.
class ExplicitBits {
 public:
  ExplicitBits() = default;
  explicit ExplicitBits(const RawBits& raw);

  std::size_t size() const { return prefix_.empty() ? 0 : prefix_.size() - 1; }
  std::size_t ones() const { return prefix_.empty() ? 0 : prefix_.back(); }
  std::size_t count(bool t) const { return t ? ones() : size() - ones(); }

  bool access(std::size_t i) const;
  std::size_t rank(bool t, std::size_t i) const;
  std::size_t select(bool t, std::size_t j) const;

  bool get(std::size_t i) const { return prefix_[i] != prefix_[i - 1]; }
  std::size_t rank1(std::size_t i) const { return prefix_[i - 1]; }
  std::size_t rank0(std::size_t i) const { return (i - 1) - prefix_[i - 1]; }

  void get_words(std::size_t first, std::size_t count, uint64_t* out) const;
  std::size_t size_in_bits() const { return prefix_.size() * 32; }

 private:
  std::vector<uint32_t> prefix_;  // prefix_[i] = ones in positions 1..i
};

enum class Encoding { Plain, Compressed };

// Runtime-selected encoding behind one value type.
class BitVector {
 public:
  BitVector() = default;
  static BitVector build(const RawBits& raw, Encoding enc);
  static BitVector build(std::string_view bits, Encoding enc) {
    return build(RawBits::from_string(bits), enc);
  }

  Encoding encoding() const {
    return std::holds_alternative<PlainBitVector>(impl_) ? Encoding::Plain : Encoding::Compressed;
  }
  std::size_t size() const;
  std::size_t count(bool t) const;
  bool access(std::size_t i) const;
  std::size_t rank(bool t, std::size_t i) const;
  std::size_t select(bool t, std::size_t j) const;
  std::size_t size_in_bits() const;

 private:
  std::variant<PlainBitVector, RrrBitVector> impl_;
};

// Fixed-width packed unsigned integers.
class IntVector {
 public:
  IntVector() = default;
  IntVector(std::size_t n, unsigned width);

  std::size_t size() const { return size_; }
  unsigned width() const { return width_; }
  uint64_t get(std::size_t i) const;  // 0-based
  void set(std::size_t i, uint64_t v);
  std::size_t size_in_bits() const { return words_.size() * 64 + 128; }

 private:
  std::vector<uint64_t> words_;
  std::size_t size_ = 0;
  unsigned width_ = 0;
};

// ceil(log2(x)) for x >= 1; 0 for x <= 1.
inline unsigned ceil_log2(uint64_t x) { return x <= 1 ? 0 : 64 - std::countl_zero(x - 1); }

}  // namespace treepath
