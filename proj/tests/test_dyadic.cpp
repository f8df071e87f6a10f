// Copyright 2026 The nsdensity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "nsdensity/dyadic.hpp"

namespace nsdensity {
namespace {

TEST(Dyadic, NormalizesRepresentation) {
  const Dyadic a(BigInt(12), 4);
  EXPECT_EQ(a.numerator(), 3);
  EXPECT_EQ(a.exponent(), 2);
  EXPECT_EQ(a, Dyadic(BigInt(3), 2));
  EXPECT_EQ(Dyadic(BigInt(0), 9), Dyadic(0));
  EXPECT_EQ(Dyadic(BigInt(3), -2), Dyadic(12));
  EXPECT_EQ(Dyadic::pow2(-3), Dyadic(BigInt(1), 3));
  EXPECT_EQ(Dyadic::pow2(4), Dyadic(16));
}

TEST(Dyadic, ArithmeticMatchesRationals) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> num(-5000, 5000);
  std::uniform_int_distribution<int> ex(0, 40);
  for (int i = 0; i < 2000; ++i) {
    const Dyadic a(BigInt(num(rng)), ex(rng));
    const Dyadic b(BigInt(num(rng)), ex(rng));
    const Rational ra = a.to_rational();
    const Rational rb = b.to_rational();
    ASSERT_EQ((a + b).to_rational(), ra + rb);
    ASSERT_EQ((a - b).to_rational(), ra - rb);
    ASSERT_EQ((a * b).to_rational(), ra * rb);
    ASSERT_EQ((-a).to_rational(), -ra);
    ASSERT_EQ(a < b, ra < rb);
    ASSERT_EQ(a == b, ra == rb);
    ASSERT_EQ(compare(a, rb) == std::strong_ordering::less, ra < rb);
  }
}

TEST(Dyadic, Formatting) {
  EXPECT_EQ(Dyadic(BigInt(5), 3).fraction(), "5/8");
  EXPECT_EQ(Dyadic(3).fraction(), "3");
  EXPECT_EQ(Dyadic(BigInt(-1), 1).fraction(), "-1/2");
  EXPECT_EQ(Dyadic(BigInt(5), 3).decimal(5), "0.62500");
  EXPECT_EQ(Dyadic(BigInt(-1), 2).decimal(2), "-0.25");
  EXPECT_EQ(Dyadic(2).decimal(0), "2");
}

TEST(Dyadic, RoundHalfEven) {
  EXPECT_EQ(format_decimal(Rational(1, 8), 2), "0.12");
  EXPECT_EQ(format_decimal(Rational(3, 8), 2), "0.38");
  EXPECT_EQ(format_decimal(Rational(-1, 8), 2), "-0.12");
  EXPECT_EQ(format_decimal(Rational(5, 2), 0), "2");
  EXPECT_EQ(format_decimal(Rational(7, 2), 0), "4");
  EXPECT_EQ(format_decimal(Rational(-1, 1000), 2), "0.00");
}

TEST(Dyadic, ParseDecimal) {
  EXPECT_EQ(parse_decimal("0.48660"), Rational(4866, 10000));
  EXPECT_EQ(parse_decimal("-1.5"), Rational(-3, 2));
  EXPECT_EQ(parse_decimal("2"), Rational(2));
  EXPECT_THROW(parse_decimal("1.2.3"), std::invalid_argument);
  EXPECT_THROW(parse_decimal(""), std::invalid_argument);
  EXPECT_THROW(parse_decimal("abc"), std::invalid_argument);
}

TEST(Dyadic, ThreeQuartersPower) {
  EXPECT_EQ(three_quarters_pow(0), Dyadic(1));
  EXPECT_EQ(three_quarters_pow(2).to_rational(), Rational(9, 16));
  Rational r = 1;
  for (int i = 0; i < 15; ++i) r *= Rational(3, 4);
  EXPECT_EQ(three_quarters_pow(15).to_rational(), r);
  EXPECT_EQ(three_quarters_pow(15).decimal(5), "0.01336");
}

}  // namespace
}  // namespace nsdensity
