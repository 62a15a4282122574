#include <gtest/gtest.h>

#include <gendir/error.hpp>
#include <gendir/rational.hpp>

using gendir::Rational;

TEST(Rational, ReducesAndNormalizesSign) {
  const Rational q(6, -4);
  EXPECT_EQ(q.num(), -3);
  EXPECT_EQ(q.den(), 2);
  EXPECT_EQ(q.to_string(), "-3/2");
  EXPECT_EQ(Rational(0, 7), Rational(0));
}

TEST(Rational, ParsesFractionsAndIntegers) {
  EXPECT_EQ(Rational::parse("2/4"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("-5"), Rational(-5));
  EXPECT_EQ(Rational::parse("7").to_string(), "7/1");
  EXPECT_THROW(Rational::parse("1/0"), gendir::ParameterError);
  EXPECT_THROW(Rational::parse("a/b"), gendir::ParameterError);
  EXPECT_THROW(Rational::parse(""), gendir::ParameterError);
}

TEST(Rational, ArithmeticIsExact) {
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
  EXPECT_TRUE(Rational(4, 2).is_integer());
  EXPECT_DOUBLE_EQ(Rational(1, 4).to_double(), 0.25);
}

TEST(Rational, OverflowIsReported) {
  const Rational big(INT64_MAX);
  EXPECT_THROW(big * Rational(2), gendir::ParameterError);
}

TEST(Rational, StringRoundTrip) {
  for (const auto& q : {Rational(-17, 9), Rational(0), Rational(123456789, 2)}) {
    EXPECT_EQ(Rational::parse(q.to_string()), q);
  }
}
