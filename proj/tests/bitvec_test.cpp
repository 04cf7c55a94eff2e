#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "treepath/bitvec.hpp"

using namespace treepath;

namespace {

// Linear-scan reference over a 1-based copy of the bits.
struct ScanOracle {
  std::vector<bool> b;  // b[0] unused
  explicit ScanOracle(const RawBits& raw) : b(raw.size() + 1) {
    for (std::size_t i = 0; i < raw.size(); ++i) b[i + 1] = raw.get(i);
  }
  std::size_t rank(bool t, std::size_t i) const {
    std::size_t c = 0;
    for (std::size_t p = 1; p < i; ++p) c += b[p] == t;
    return c;
  }
  std::vector<std::size_t> positions(bool t) const {
    std::vector<std::size_t> out;
    for (std::size_t p = 1; p < b.size(); ++p)
      if (b[p] == t) out.push_back(p);
    return out;
  }
};

RawBits random_bits(std::size_t n, double density, std::mt19937_64& rng) {
  RawBits r;
  std::bernoulli_distribution d(density);
  for (std::size_t i = 0; i < n; ++i) r.push_back(d(rng));
  return r;
}

template <class BV>
void check_against_scan(const RawBits& raw, const BV& bv) {
  ScanOracle o(raw);
  std::size_t n = raw.size();
  ASSERT_EQ(bv.size(), n);
  std::size_t r1 = 0;
  for (std::size_t i = 1; i <= n + 1; ++i) {
    ASSERT_EQ(bv.rank(true, i), r1) << "i=" << i;
    ASSERT_EQ(bv.rank(false, i), i - 1 - r1) << "i=" << i;
    if (i <= n) {
      ASSERT_EQ(bv.access(i), static_cast<bool>(o.b[i])) << "i=" << i;
      r1 += o.b[i];
    }
  }
  for (bool t : {false, true}) {
    auto pos = o.positions(t);
    ASSERT_EQ(bv.count(t), pos.size());
    for (std::size_t j = 0; j < pos.size(); ++j) ASSERT_EQ(bv.select(t, j + 1), pos[j]) << "t=" << t << " j=" << j + 1;
    EXPECT_THROW(bv.select(t, pos.size() + 1), std::out_of_range);
  }
}

const char* kRefBitmap = "10000111101010001110";

}  // namespace

TEST(BitVector, EmptyVector) {
  for (auto enc : {Encoding::Plain, Encoding::Compressed}) {
    auto bv = BitVector::build("", enc);
    EXPECT_EQ(bv.size(), 0u);
    EXPECT_EQ(bv.rank(true, 1), 0u);
    EXPECT_THROW(bv.select(true, 1), std::out_of_range);
  }
}

TEST(BitVector, ReferenceCountBitmapFrozenValues) {
  // Hand counted: ones at 1,6,7,8,9,11,13,17,18,19.
  for (auto enc : {Encoding::Plain, Encoding::Compressed}) {
    auto bv = BitVector::build(kRefBitmap, enc);
    EXPECT_EQ(bv.size(), 20u);
    EXPECT_EQ(bv.count(true), 10u);
    EXPECT_EQ(bv.rank(true, 6), 1u);
    EXPECT_EQ(bv.select(true, 7), 13u);
    EXPECT_TRUE(bv.access(13));
    EXPECT_EQ(bv.rank(false, 21), 10u);
  }
}

TEST(BitVector, SmallCases) {
  auto one = BitVector::build("1", Encoding::Plain);
  EXPECT_EQ(one.select(true, 1), 1u);
  auto ten = BitVector::build("10", Encoding::Compressed);
  EXPECT_FALSE(ten.access(2));
  EXPECT_THROW(ten.access(3), std::out_of_range);
  EXPECT_THROW(ten.access(0), std::out_of_range);
  EXPECT_THROW(ten.rank(true, 4), std::out_of_range);
  EXPECT_THROW(ten.rank(true, 0), std::out_of_range);
}

TEST(BitVector, MatchesScanOracleExhaustively) {
  std::mt19937_64 rng(11);
  for (std::size_t n : {1u, 7u, 63u, 64u, 65u, 511u, 512u, 513u, 4095u, 5000u}) {
    for (double d : {0.01, 0.5, 0.99}) {
      RawBits raw = random_bits(n, d, rng);
      check_against_scan(raw, PlainBitVector(raw));
      check_against_scan(raw, RrrBitVector(raw));
      check_against_scan(raw, ExplicitBits(raw));
    }
  }
}

TEST(BitVector, AllZerosAndAllOnes) {
  for (std::size_t n : {15u, 960u, 9000u}) {
    RawBits z(n, false), o(n, true);
    check_against_scan(z, PlainBitVector(z));
    check_against_scan(z, RrrBitVector(z));
    check_against_scan(o, PlainBitVector(o));
    check_against_scan(o, RrrBitVector(o));
  }
}

TEST(BitVector, PlainAndCompressedAgreeOnRandomVectors) {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 1000; ++iter) {
    double d = iter % 3 == 0 ? 0.01 : iter % 3 == 1 ? 0.5 : 0.99;
    std::size_t n = std::uniform_int_distribution<std::size_t>(0, 3000)(rng);
    RawBits raw = random_bits(n, d, rng);
    PlainBitVector p(raw);
    RrrBitVector c(raw);
    ASSERT_EQ(p.ones(), c.ones());
    for (int k = 0; k < 50 && n > 0; ++k) {
      std::size_t i = std::uniform_int_distribution<std::size_t>(1, n)(rng);
      ASSERT_EQ(p.access(i), c.access(i));
      ASSERT_EQ(p.rank(true, i), c.rank(true, i));
      for (bool t : {false, true}) {
        if (p.count(t) == 0) continue;
        std::size_t j = std::uniform_int_distribution<std::size_t>(1, p.count(t))(rng);
        ASSERT_EQ(p.select(t, j), c.select(t, j));
      }
    }
  }
}

TEST(BitVector, SelectInvertsRankOnLargeVectors) {
  std::mt19937_64 rng(99);
  RawBits raw = random_bits(100000, 0.3, rng);
  PlainBitVector p(raw);
  RrrBitVector c(raw);
  std::vector<std::size_t> prefix(raw.size() + 2, 0);
  for (std::size_t i = 1; i <= raw.size(); ++i) prefix[i + 1] = prefix[i] + raw.get(i - 1);
  for (int k = 0; k < 10000; ++k) {
    std::size_t i = std::uniform_int_distribution<std::size_t>(1, raw.size())(rng);
    bool t = raw.get(i - 1);
    std::size_t r1 = prefix[i];
    ASSERT_EQ(p.rank(true, i), r1);
    ASSERT_EQ(c.rank(true, i), r1);
    ASSERT_EQ(p.access(i), t);
    ASSERT_EQ(c.access(i), t);
    ASSERT_EQ(p.select(t, p.rank(t, i) + 1), i);
    ASSERT_EQ(c.select(t, c.rank(t, i) + 1), i);
  }
}

TEST(BitVector, RrrBlockCodingRoundTrips) {
  for (unsigned v = 0; v < (1u << 15); ++v) {
    unsigned k = 0;
    uint16_t off = RrrBitVector::encode_block(static_cast<uint16_t>(v), &k);
    ASSERT_EQ(k, static_cast<unsigned>(std::popcount(v)));
    ASSERT_LT(off, 1u << RrrBitVector::offset_width(k));
    ASSERT_EQ(RrrBitVector::decode_block(k, off), v);
  }
  EXPECT_EQ(RrrBitVector::offset_width(0), 0u);
  EXPECT_EQ(RrrBitVector::offset_width(1), 4u);  // C(15,1) = 15
  EXPECT_EQ(RrrBitVector::offset_width(7), 13u);  // C(15,7) = 6435
}

TEST(BitVector, CompressedSmallerOnSparseLongVectors) {
  std::mt19937_64 rng(3);
  for (double d : {0.01, 0.05, 0.10}) {
    RawBits raw = random_bits(1u << 16, d, rng);
    EXPECT_LE(RrrBitVector(raw).size_in_bits(), PlainBitVector(raw).size_in_bits()) << "density " << d;
  }
}

TEST(BitVector, GetWordsMatchesRaw) {
  std::mt19937_64 rng(8);
  RawBits raw = random_bits(1000, 0.4, rng);
  PlainBitVector p(raw);
  RrrBitVector c(raw);
  ExplicitBits e(raw);
  for (std::size_t first : {0u, 3u, 15u}) {
    uint64_t a[3], b[3], x[3];
    p.get_words(first, 3, a);
    c.get_words(first, 3, b);
    e.get_words(first, 3, x);
    for (int k = 0; k < 3; ++k) {
      uint64_t want = first + k < raw.words().size() ? raw.words()[first + k] : 0;
      EXPECT_EQ(a[k], want);
      EXPECT_EQ(b[k], want);
      EXPECT_EQ(x[k], want);
    }
  }
}

TEST(IntVector, PacksAndReadsBack) {
  std::mt19937_64 rng(4);
  for (unsigned w : {1u, 3u, 7u, 16u, 33u, 64u}) {
    IntVector v(777, w);
    std::vector<uint64_t> ref(777);
    for (auto& x : ref) x = rng() & bits::low_mask(w);
    for (std::size_t i = 0; i < ref.size(); ++i) v.set(i, ref[i]);
    for (std::size_t i = 0; i < ref.size(); ++i) ASSERT_EQ(v.get(i), ref[i]) << "w=" << w;
  }
}
