#include <gtest/gtest.h>

#include <set>
#include <span>
#include <string>
#include <vector>

#include "oig/oig.hpp"
#include "oracles.hpp"

using oig::BitVector;

TEST(BitVector, TextRoundTripAndOnePositions) {
  const BitVector v = BitVector::from_string("01101");
  EXPECT_EQ(v.to_string(), "01101");
  EXPECT_EQ(v.size(), 5U);
  EXPECT_EQ(v.ones(), (std::vector<std::size_t>{2, 3, 5}));
  EXPECT_TRUE(v.test(2));
  EXPECT_FALSE(v.test(1));
  EXPECT_THROW(v.test(0), oig::InputError);
  EXPECT_THROW(v.test(6), oig::InputError);
  EXPECT_THROW(BitVector::from_string("01x"), oig::InputError);
}

TEST(BitVector, WideVectorsSpanWords) {
  BitVector v(130);
  v.set(1).set(64).set(65).set(130);
  EXPECT_EQ(v.ones_count(), 4U);
  EXPECT_EQ(v.ones(), (std::vector<std::size_t>{1, 64, 65, 130}));
  EXPECT_EQ(BitVector::from_string(v.to_string()), v);
}

TEST(BitVector, HammingDistanceExamples) {
  EXPECT_EQ(oig::hamming_distance(BitVector::from_string("0000"), BitVector::from_string("0000")), 0U);
  EXPECT_EQ(oig::hamming_distance(BitVector::from_string("000"), BitVector::from_string("010")), 1U);
  EXPECT_EQ(oig::hamming_distance(BitVector::from_string("1100"), BitVector::from_string("0011")), 4U);
  EXPECT_THROW(oig::hamming_distance(BitVector(3), BitVector(4)), oig::InputError);
}

TEST(BitVector, RestrictKeepsSubsetPositionsInOrder) {
  const BitVector h = BitVector::from_string("10110");
  EXPECT_EQ(h.restrict_to(BitVector::from_string("11010")).to_string(), "101");
}

TEST(BitVector, OrderMatchesTextOrder) {
  std::vector<BitVector> all;
  for (std::uint64_t mask = 0; mask < 32; ++mask) all.push_back(oracle::from_mask(5, mask));
  for (const auto& a : all) {
    for (const auto& b : all) {
      EXPECT_EQ(a < b, a.to_string() < b.to_string()) << a.to_string() << " vs " << b.to_string();
    }
  }
}

TEST(KeyedMix, MatchesReferenceSplitMix) {
  // First outputs of the reference SplitMix64 generator seeded with 0.
  oig::SplitMixStream s(0);
  EXPECT_EQ(s.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(s.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(s.next(), 0x06c45d188009454fULL);
  EXPECT_EQ(oig::mix64(0), 0xe220a8397b1dcdafULL);
}

TEST(KeyedMix, GoldenKeys) {
  EXPECT_EQ(oig::KeyedMix(0, oig::MixTag::kSelect).value(), 0xb3e7fa3605dcd17fULL);
  EXPECT_EQ(oig::KeyedMix(7, oig::MixTag::kSelect).add(3).value(), 0x2b376811312af2eaULL);
  EXPECT_EQ(oig::KeyedMix(42, oig::MixTag::kTrial).add(1).add(2).add(3).value(), 0xa961eecea3630f78ULL);
  const BitVector v = BitVector::from_string("1110");
  EXPECT_EQ(oig::KeyedMix(0, oig::MixTag::kSelect).add(2).add(v.words()).value(), 0x41f0a5316cfeb577ULL);
}

TEST(KeyedMix, TagsSeparateDomains) {
  std::set<std::uint64_t> seen;
  for (auto tag : {oig::MixTag::kSelect, oig::MixTag::kFlip, oig::MixTag::kTrial, oig::MixTag::kSample}) {
    seen.insert(oig::KeyedMix(1, tag).add(5).value());
  }
  EXPECT_EQ(seen.size(), 4U);
}

TEST(KeyedMix, BelowStaysInRangeAndCoversIt) {
  oig::SplitMixStream s(99);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto x = s.below(7);
    ASSERT_LT(x, 7U);
    ++hits[x];
  }
  for (int h : hits) EXPECT_GT(h, 800);
}

TEST(Combinatorics, BinomialMatchesPascal) {
  for (std::size_t n = 0; n <= 40; ++n) {
    for (std::size_t k = 0; k <= n + 1; ++k) {
      EXPECT_EQ(oig::binomial(n, k), oig::BigCount(oracle::pascal(n, k))) << n << " choose " << k;
    }
  }
}

TEST(Combinatorics, LargeBinomialNeedsBigCount) {
  EXPECT_THROW(oig::binomial_u64(200, 100), oig::CapacityError);
  EXPECT_GT(oig::binomial(200, 100), oig::BigCount(~std::uint64_t{0}));
}

TEST(Combinatorics, CombinationsAreLexicographicAndComplete) {
  std::vector<std::vector<std::size_t>> seen;
  oig::for_each_combination(5, 3, [&](std::span<const std::size_t> c) { seen.emplace_back(c.begin(), c.end()); });
  ASSERT_EQ(seen.size(), 10U);
  EXPECT_EQ(seen.front(), (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(seen.back(), (std::vector<std::size_t>{3, 4, 5}));
  EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));

  std::set<BitVector> vectors;
  oig::for_each_weight_k(6, 2, [&](const BitVector& v) {
    EXPECT_EQ(v.ones_count(), 2U);
    vectors.insert(v);
  });
  EXPECT_EQ(vectors.size(), 15U);

  std::size_t calls = 0;
  oig::for_each_weight_k(4, 0, [&](const BitVector& v) {
    EXPECT_TRUE(v.none());
    ++calls;
  });
  EXPECT_EQ(calls, 1U);
}

TEST(Rational, ParsesDecimalFractionAndInteger) {
  EXPECT_EQ(oig::parse_rational("0.125"), oig::Rational(1, 8));
  EXPECT_EQ(oig::parse_rational("0.1"), oig::Rational(1, 10));
  EXPECT_EQ(oig::parse_rational("1/80"), oig::Rational(1, 80));
  EXPECT_EQ(oig::parse_rational("3"), oig::Rational(3));
  EXPECT_EQ(oig::to_string(oig::Rational(1, 80)), "1/80");
  for (const char* bad : {"", "abc", "1/0", "0.1.2", "1/", ".", "--1"}) {
    EXPECT_THROW(oig::parse_rational(bad), std::invalid_argument) << bad;
  }
}

TEST(Rational, CeilOfNonnegative) {
  EXPECT_EQ(oig::ceil_nonneg(oig::Rational(5)), 5);
  EXPECT_EQ(oig::ceil_nonneg(oig::Rational(12, 10)), 2);
  EXPECT_EQ(oig::ceil_nonneg(oig::Rational(0)), 0);
}
