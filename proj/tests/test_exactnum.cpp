/*
Copyright 2026 The gelc Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include <random>

#include <gtest/gtest.h>

#include "gelc/interval.hpp"
#include "gelc/rational.hpp"
#include "test_util.hpp"

namespace gelc {
namespace {

using testing::R;

TEST(Rational, ParsesAndNormalizes) {
  EXPECT_EQ(R("6/9"), Rational(2, 3));
  EXPECT_EQ(R("4"), Rational(4));
  EXPECT_EQ(R("4").str(), "4/1");
  EXPECT_EQ(R("10/4").str(), "5/2");
  EXPECT_THROW(R("1/0"), std::exception);
  EXPECT_THROW(R("abc"), std::exception);
  EXPECT_THROW(R("-1/2"), std::exception);
}

TEST(Rational, SubtractionBelowZeroThrows) {
  EXPECT_EQ(R("1/2") - R("1/3"), R("1/6"));
  EXPECT_THROW(R("1/3") - R("1/2"), DomainError);
}

TEST(Rational, Pow2) {
  EXPECT_EQ(pow2(0), Rational(1));
  EXPECT_EQ(pow2(5), Rational(32));
  EXPECT_EQ(pow2(-3), R("1/8"));
}

TEST(FloorBits, Examples) {
  EXPECT_EQ(floor_bits(R("5/9"), 2), R("1/2"));
  EXPECT_EQ(floor_bits(R("4/3"), 0), Rational(1));
  for (const char* r : {"0", "1/3", "5/9", "99/100"}) {
    EXPECT_EQ(floor_bits(R(r), 0), Rational(0)) << r;
  }
  EXPECT_THROW(floor_bits(Rational(2), 3), DomainError);
}

TEST(FloorBits, MatchesReference) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const ref::Q v = ref::make(rng() % 2000, 1000 + rng() % 1000);
    const unsigned l = static_cast<unsigned>(rng() % 40);
    EXPECT_EQ(floor_bits(Rational(v), l).get(), ref::trunc(v, l));
  }
}

TEST(ResidueBits, Examples) {
  EXPECT_EQ(residue_bits(R("5/9"), 2), R("2/9"));
  EXPECT_EQ(residue_bits(R("3/4"), 2), Rational(0));
  for (const char* r : {"0", "1/3", "5/9"}) {
    EXPECT_EQ(residue_bits(R(r), 0), R(r));
  }
  EXPECT_THROW(residue_bits(Rational(1), 1), DomainError);
}

TEST(Logs, FloorAndCeil) {
  EXPECT_EQ(floor_neg_log2(R("2/9")), 2);   // log2(9/2) = 2.17
  EXPECT_EQ(floor_neg_log2(R("8/9")), 0);
  EXPECT_EQ(floor_neg_log2(R("8/81")), 3);
  EXPECT_EQ(floor_neg_log2(Rational(4)), -2);
  EXPECT_EQ(floor_neg_log2(Rational(3)), -2);
  EXPECT_EQ(ceil_neg_log2(R("1/9")), 4);
  EXPECT_EQ(ceil_neg_log2(R("1/8")), 3);
  EXPECT_EQ(ceil_neg_log2(R("4/9")), 2);
  EXPECT_EQ(ceil_neg_log2(Rational(3)), -1);
  EXPECT_THROW(floor_neg_log2(Rational(0)), DomainError);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const ref::Q v = ref::make(1 + rng() % 5000, 1 + rng() % 5000);
    EXPECT_EQ(floor_neg_log2(Rational(v)), ref::floor_neg_log2(v));
    EXPECT_EQ(ceil_neg_log2(Rational(v)), ref::ceil_neg_log2(v));
  }
}

TEST(Real, EnclosesExactValues) {
  const Real third(R("1/3"));
  EXPECT_LE(third.lower(), 1.0 / 3);
  EXPECT_GE(third.upper(), 1.0 / 3);
  EXPECT_LT(third.radius(), 1e-70);
  const Real l = Real::log2(Rational(8));
  EXPECT_EQ(l.lower(), 3.0);
  EXPECT_EQ(l.upper(), 3.0);
  EXPECT_THROW(Real::log2(Rational(0)), DomainError);
}

TEST(Real, Verdicts) {
  const Real a(R("1/3"));
  const Real b(R("1/2"));
  EXPECT_EQ(less(a, b), Verdict::holds);
  EXPECT_EQ(less(b, a), Verdict::fails);
  EXPECT_EQ(less_equal(a, a), Verdict::undecided);
  EXPECT_EQ(less_equal(Real::from_int(2), Real::from_int(2)), Verdict::holds);
  EXPECT_EQ(less_equal(b - a, Real(R("1/6"))), Verdict::undecided);
  EXPECT_THROW(a / (b - b), DomainError);
}

TEST(Real, BinaryEntropy) {
  const Real h = binary_entropy(R("1/2"));
  EXPECT_EQ(h.lower(), 1.0);
  // H(1/3) = log2 3 - 2/3 = 0.918295834...
  const Real h3 = binary_entropy(R("1/3"));
  EXPECT_NEAR(h3.lower(), 0.9182958340544896, 1e-15);
  EXPECT_LT(h3.radius(), 1e-60);
  EXPECT_THROW(binary_entropy(Rational(1)), DomainError);
}

}  // namespace
}  // namespace gelc
