#include <fairaudit/errors.hpp>
#include <fairaudit/rational.hpp>

#include <gtest/gtest.h>

#include <random>

namespace fairaudit {
namespace {

TEST(Rational, ParsesFractionsAndDecimalsExactly) {
  EXPECT_EQ(parse_rational("7/75"), Rational(7, 75));
  EXPECT_EQ(parse_rational("0.3"), Rational(3, 10));
  EXPECT_EQ(parse_rational(" -2.50 "), Rational(-5, 2));
  EXPECT_EQ(parse_rational("1e-9"), Rational(1, 1000000000));
  EXPECT_EQ(parse_rational("2.5E+2"), Rational(250));
  EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
  EXPECT_EQ(parse_rational("3."), Rational(3));
  EXPECT_EQ(parse_rational("6/-4"), Rational(-3, 2));
}

TEST(Rational, RejectsMalformedInput) {
  for (const char* bad : {"", "abc", "1/0", "1/", "0.3.4", "1e", "e5", "--1", "1,5", "."}) {
    EXPECT_THROW(parse_rational(bad), Error) << bad;
  }
}

TEST(Rational, FractionStringIsLowestTerms) {
  EXPECT_EQ(to_fraction_string(Rational(2600, 6000) - Rational(680, 2000)), "7/75");
  EXPECT_EQ(to_fraction_string(Rational(4, 2)), "2");
  EXPECT_EQ(to_fraction_string(Rational(-1, 3)), "-1/3");
  EXPECT_EQ(to_fraction_string(Rational(0)), "0");
}

TEST(Rational, DecimalFormattingIsShortestAndLocaleFree) {
  EXPECT_EQ(format_decimal(0.3), "0.3");
  EXPECT_EQ(format_decimal(-0.0), "0");
  EXPECT_EQ(format_decimal(1e-9), "1e-09");
  EXPECT_EQ(format_fixed(0.25, 2), "0.25");
  EXPECT_EQ(format_fixed(-0.0001, 2), "0.00");
}

TEST(Rational, DoubleRoundTripIsExact) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    EXPECT_EQ(to_double(rational_from_double(x)), x);
    // Shortest decimal text parses back to a rational that rounds to x.
    EXPECT_EQ(to_double(parse_rational(format_decimal(x))), x);
  }
  EXPECT_THROW(rational_from_double(std::numeric_limits<double>::infinity()), DomainError);
}

TEST(Rational, ToDoubleIsCorrectlyRounded) {
  EXPECT_EQ(to_double(Rational(13, 30)), 13.0 / 30.0);
  EXPECT_EQ(to_double(Rational(23, 90)), 23.0 / 90.0);
  EXPECT_EQ(to_double(Rational(1, 3)), 1.0 / 3.0);
}

}  // namespace
}  // namespace fairaudit
