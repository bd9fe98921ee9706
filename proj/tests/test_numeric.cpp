// Copyright 2026 The shapcirc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "shapcirc/numeric.hpp"

namespace shapcirc {
namespace {

using testing::q;

TEST(ParseRational, Fractions) {
  EXPECT_EQ(parse_rational("2/5"), q(2, 5));
  EXPECT_EQ(parse_rational("4/10"), q(2, 5));
  EXPECT_EQ(parse_rational("-3/9"), q(-1, 3));
  EXPECT_EQ(parse_rational("7"), q(7, 1));
}

TEST(ParseRational, Decimals) {
  EXPECT_EQ(parse_rational("0.4"), q(2, 5));
  EXPECT_EQ(parse_rational(".5"), q(1, 2));
  EXPECT_EQ(parse_rational("1.0"), q(1, 1));
  EXPECT_EQ(parse_rational("-0.125"), q(-1, 8));
}

TEST(ParseRational, Rejects) {
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational("1/2/3"), ParseError);
  EXPECT_THROW(parse_rational("0.4x"), ParseError);
}

TEST(Format, RationalAlwaysHasDenominator) {
  EXPECT_EQ(to_string(q(73, 125)), "73/125");
  EXPECT_EQ(to_string(Rational(1)), "1/1");
  EXPECT_EQ(to_string(Rational(0)), "0/1");
}

TEST(Format, FifteenSignificantDigits) {
  EXPECT_EQ(format_decimal(q(73, 125)), "0.584000000000000");
  EXPECT_EQ(format_decimal(q(19, 250)), "0.0760000000000000");
  EXPECT_EQ(format_decimal(q(1, 3)), "0.333333333333333");
  EXPECT_EQ(format_decimal(q(2, 3)), "0.666666666666667");
  EXPECT_EQ(format_decimal(q(3, 1)), "3.00000000000000");
  EXPECT_EQ(format_decimal(q(-1, 8)), "-0.125000000000000");
  EXPECT_EQ(format_decimal(Rational(0)), "0.00000000000000");
  EXPECT_EQ(format_decimal(q(123456789, 1)), "123456789.000000");
}

TEST(Format, HalfEven) {
  // 16 significant digits ending in 5 exactly: ties go to the even digit
  EXPECT_EQ(format_decimal(parse_rational("0.1234567890123425")), "0.123456789012342");
  EXPECT_EQ(format_decimal(parse_rational("0.1234567890123435")), "0.123456789012344");
  EXPECT_EQ(format_decimal(parse_rational("0.12345678901234351")), "0.123456789012344");
  EXPECT_EQ(format_decimal(parse_rational("9.999999999999995")), "10.0000000000000");
}

TEST(Format, SmallMagnitudes) {
  EXPECT_EQ(format_decimal(q(1, 1000000)), "0.00000100000000000000");
  EXPECT_EQ(format_decimal(parse_rational("0.000000000000000000001")), "0.00000000000000000000100000000000000");
}

TEST(Pow, Rational) {
  EXPECT_EQ(pow(q(2, 3), 3), q(8, 27));
  EXPECT_EQ(pow(q(2, 3), 0), Rational(1));
}

TEST(Grid, DefaultUnbounded) {
  const InterpolationGrid g = default_grid(3);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_EQ(g.nodes[0], Rational(1));
  EXPECT_EQ(g.nodes[3], Rational(4));
  EXPECT_NO_THROW(g.validate());
}

TEST(Grid, DefaultBounded) {
  const InterpolationGrid g = default_grid(2, q(1, 2));
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g.nodes[0], q(1, 8));
  EXPECT_EQ(g.nodes[2], q(3, 8));
  for (const Rational& z : g.nodes) EXPECT_LT(z, q(1, 2));
}

TEST(Grid, ValidateRejectsDuplicatesAndBound) {
  InterpolationGrid g{{Rational(1), Rational(1)}, std::nullopt};
  EXPECT_THROW(g.validate(), InputError);
  InterpolationGrid h{{q(1, 2), Rational(1)}, Rational(1)};
  EXPECT_THROW(h.validate(), InputError);
}

TEST(Vandermonde, RecoversPolynomial) {
  const std::vector<Rational> coeffs{q(3, 7), q(-2, 5), Rational(0), q(11, 3), q(1, 9)};
  for (const auto& grid : {default_grid(4), default_grid(4, q(1, 3))}) {
    std::vector<Rational> values;
    for (const Rational& z : grid.nodes) values.push_back(evaluate_polynomial(coeffs, z));
    EXPECT_EQ(solve_vandermonde(grid, values), coeffs);
  }
}

TEST(Vandermonde, SizeMismatch) {
  EXPECT_THROW(solve_vandermonde(default_grid(2), {Rational(1)}), InputError);
}

TEST(NumberCast, Both) {
  EXPECT_EQ(number_cast<Rational>(q(1, 4)), q(1, 4));
  EXPECT_DOUBLE_EQ(number_cast<double>(q(1, 4)), 0.25);
  EXPECT_DOUBLE_EQ(number_cast<double>(Integer(12)), 12.0);
  EXPECT_EQ(to_rational(0.5), q(1, 2));
}

}  // namespace
}  // namespace shapcirc
