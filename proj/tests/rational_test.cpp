// Copyright 2026 The Compgame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "compgame/rational.hpp"

#include <gtest/gtest.h>

#include "compgame/errors.hpp"
#include "compgame/linalg.hpp"
#include "compgame/rng.hpp"

namespace compgame {
namespace {

TEST(RationalTest, ParsesIntegersFractionsAndDecimals) {
  EXPECT_EQ(Rational::parse("3"), Rational(3));
  EXPECT_EQ(Rational::parse("-7"), Rational(-7));
  EXPECT_EQ(Rational::parse("9/10"), Rational(9, 10));
  EXPECT_EQ(Rational::parse("6/4"), Rational(3, 2));
  EXPECT_EQ(Rational::parse("-1/4"), Rational(-1, 4));
  EXPECT_EQ(Rational::parse("0.25"), Rational(1, 4));
  EXPECT_EQ(Rational::parse("1.5"), Rational(3, 2));
}

TEST(RationalTest, RejectsMalformedText) {
  for (const char* bad : {"", "0.9.1", "1/0", "a", "1/", "/2", "1//2", "1/2/3", "--1", " 1",
                          "1e5", "0x10"}) {
    EXPECT_THROW(Rational::parse(bad), ArgumentError) << bad;
  }
  EXPECT_THROW(Rational(1, 0), ArgumentError);
}

TEST(RationalTest, CanonicalText) {
  EXPECT_EQ(Rational(2, 4).str(), "1/2");
  EXPECT_EQ(Rational(4, 2).str(), "2");
  EXPECT_EQ(Rational(1, -3).str(), "-1/3");
  EXPECT_EQ(Rational(0, 5).str(), "0");
}

TEST(RationalTest, ArithmeticAndOrdering) {
  const Rational a(1, 3);
  const Rational b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_LT(b, a);
  EXPECT_EQ((-a).abs(), a);
  EXPECT_THROW(a / Rational(0), ArgumentError);
}

TEST(RationalTest, Dyadic) {
  EXPECT_TRUE(Rational(3, 4).is_dyadic());
  EXPECT_TRUE(Rational(5).is_dyadic());
  EXPECT_FALSE(Rational(1, 3).is_dyadic());
}

TEST(RationalTest, StrParseRoundTripProperty) {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const auto num = static_cast<std::int64_t>(uniform_below(rng, 2001)) - 1000;
    const auto den = static_cast<std::int64_t>(uniform_below(rng, 999)) + 1;
    const Rational q(num, den);
    EXPECT_EQ(Rational::parse(q.str()), q);
  }
}

TEST(RationalTest, WorksAsEigenScalar) {
  MatrixQ a(2, 2);
  a << Rational(1, 2), Rational(-1), Rational(0), Rational(1, 3);
  VectorQ x(2);
  x << Rational(1, 4), Rational(3, 4);
  // (1/4)(1/2)(1/4) + (1/4)(-1)(3/4) + (3/4)(1/3)(3/4) = 1/32 - 3/16 + 3/16.
  EXPECT_EQ(bilinear(x, a, x), Rational(1, 32));
}

}  // namespace
}  // namespace compgame
