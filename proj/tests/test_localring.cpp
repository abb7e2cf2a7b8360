#include <gtest/gtest.h>

#include <random>

#include "localring.hpp"

using namespace modp;

TEST(GF, FieldAxioms) {
  for (auto [p, m] : {std::pair{2u, 1u}, {2u, 3u}, {3u, 2u}, {5u, 1u}, {5u, 2u}}) {
    GF F(p, m);
    ASSERT_EQ(F.order(), unsigned(std::pow(p, m)));
    for (Fe a = 0; a < F.order(); ++a) {
      EXPECT_EQ(F.add(a, F.neg(a)), 0u);
      if (a) EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
      for (Fe b = 0; b < F.order(); ++b) {
        EXPECT_EQ(F.mul(a, b), F.mul(b, a));
        Fe c = (a * 7 + b * 3 + 1) % F.order();
        EXPECT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
      }
    }
    // Frobenius is additive and has order m.
    for (Fe a = 0; a < F.order(); ++a) EXPECT_EQ(F.frob(a, m), a);
  }
}

TEST(GF, GeneratorPrimeTwo) {
  GF F(2, 1);
  EXPECT_EQ(F.generator(), 1u);
}

TEST(GF, EmbeddingIsRingMap) {
  GF small(3, 1), big(3, 2);
  Embedding e(small, big);
  for (Fe a = 0; a < 3; ++a)
    for (Fe b = 0; b < 3; ++b) {
      EXPECT_EQ(e(small.add(a, b)), big.add(e(a), e(b)));
      EXPECT_EQ(e(small.mul(a, b)), big.mul(e(a), e(b)));
    }
}

TEST(LocalRing, TeichmullerEqualChar) {
  LocalRing R(Backend::Equal, 5, 1, 6);
  Scalar t = R.teich(3);
  EXPECT_EQ(R.reduce(t), 3u);
  EXPECT_EQ(R.truncate(t, 1), t);  // a constant series
  EXPECT_EQ(R.teich(0), R.zero());
  EXPECT_EQ(R.teich(1), R.one());
}

TEST(LocalRing, TeichmullerMixedChar) {
  LocalRing R(Backend::Mixed, 5, 1, 3);
  // Fixed point of x -> x^5 mod 125 lifting 2, found by brute force.
  unsigned lift = 0;
  for (unsigned x = 2; x < 125; x += 5) {
    unsigned y = 1;
    for (int i = 0; i < 5; ++i) y = y * x % 125;
    if (y == x) lift = x;
  }
  ASSERT_EQ(lift, 57u);
  EXPECT_EQ(R.teich(2), R.from_int(57));
  EXPECT_EQ(R.teich(0), R.zero());
  EXPECT_EQ(R.teich(1), R.one());
}

TEST(LocalRing, TeichmullerMultiplicative) {
  for (auto b : {Backend::Equal, Backend::Mixed}) {
    LocalRing R(b, 5, 1, 8);
    const GF& F = R.residue();
    for (Fe x = 0; x < 5; ++x)
      for (Fe y = 0; y < 5; ++y) {
        EXPECT_EQ(R.teich(F.mul(x, y)), R.mul(R.teich(x), R.teich(y)));
        Scalar carry = R.sub(R.add(R.teich(x), R.teich(y)), R.teich(F.add(x, y)));
        if (b == Backend::Equal)
          EXPECT_TRUE(R.is_zero(carry));
        else
          EXPECT_GE(R.val(carry), 1u);
      }
  }
}

TEST(LocalRing, CharTwoDoubling) {
  LocalRing R(Backend::Equal, 2, 1, 4);
  Scalar w = R.uniformizer();
  EXPECT_TRUE(R.is_zero(R.add(w, w)));
}

TEST(LocalRing, Valuation) {
  LocalRing R(Backend::Equal, 3, 2, 6);
  Scalar u = R.add(R.teich(R.residue().generator()), R.uniformizer());
  EXPECT_EQ(R.val(R.mul_pi(u, 2)), 2u);
  EXPECT_EQ(R.val(R.zero()), 6u);
}

TEST(LocalRing, InverseOfOnePlusW) {
  LocalRing R(Backend::Equal, 3, 1, 3);
  Scalar x = R.add(R.one(), R.uniformizer());
  Scalar expect = R.parse("1 + 2*w + w^2");
  EXPECT_EQ(R.inv(x), expect);
  EXPECT_EQ(R.mul(x, expect), R.one());
}

TEST(LocalRing, NonUnitHasNoInverse) {
  LocalRing R(Backend::Equal, 3, 1, 4);
  EXPECT_THROW(R.inv(R.uniformizer()), DomainError);
}

TEST(LocalRing, RandomRingAxioms) {
  std::mt19937_64 rng(7);
  for (auto [b, p, f] : {std::tuple{Backend::Equal, 2u, 2u}, {Backend::Equal, 5u, 1u}, {Backend::Mixed, 3u, 1u}}) {
    LocalRing R(b, p, f, 7);
    for (int i = 0; i < 500; ++i) {
      Scalar x = R.random(rng), y = R.random(rng), z = R.random(rng);
      EXPECT_EQ(R.add(R.add(x, y), z), R.add(x, R.add(y, z)));
      EXPECT_EQ(R.mul(x, R.add(y, z)), R.add(R.mul(x, y), R.mul(x, z)));
      if (R.is_unit(x)) EXPECT_EQ(R.mul(x, R.inv(x)), R.one());
      EXPECT_EQ(R.parse(R.str(x)), x);
    }
  }
}

TEST(LocalRing, IndexRoundTrip) {
  LocalRing R(Backend::Equal, 3, 1, 6);
  for (uint64_t i = 0; i < R.count(3); ++i) EXPECT_EQ(R.index(R.from_index(i, 3), 3), i);
  LocalRing M(Backend::Mixed, 3, 1, 6);
  for (uint64_t i = 0; i < M.count(3); ++i) EXPECT_EQ(M.index(M.from_index(i, 3), 3), i);
}

TEST(LocalRing, MixedResidueDegreeRejected) {
  EXPECT_THROW(LocalRing(Backend::Mixed, 3, 2, 5), ConfigError);
}
