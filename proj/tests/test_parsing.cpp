#include <gtest/gtest.h>

#include <cmath>

#include "tsirelson/errors.hpp"
#include "tsirelson/scalar.hpp"
#include "tsirelson/sparse_vector.hpp"
#include "tsirelson/theta.hpp"

using namespace tsirelson;

TEST(Scalar, ParseRational) {
  EXPECT_EQ(parse_scalar<Rational>("0.1"), Rational(1, 10));
  EXPECT_EQ(parse_scalar<Rational>("-3/6"), Rational(-1, 2));
  EXPECT_EQ(parse_scalar<Rational>("1.5e-2"), Rational(3, 200));
  EXPECT_EQ(parse_scalar<Rational>("2"), Rational(2));
  EXPECT_THROW(parse_scalar<Rational>("1/0"), ParseError);
  EXPECT_THROW(parse_scalar<Rational>("abc"), ParseError);
  EXPECT_EQ(format_scalar(Rational(3, 2)), "3/2");
}

TEST(Scalar, ParseDouble) {
  EXPECT_DOUBLE_EQ(parse_scalar<double>("0.5"), 0.5);
  EXPECT_DOUBLE_EQ(parse_scalar<double>("1/4"), 0.25);
  EXPECT_THROW(parse_scalar<double>("1..2"), ParseError);
  EXPECT_EQ(format_scalar(0.1), "0.1");
}

TEST(Theta, Forms) {
  const ThetaSpec half = parse_theta("1/2");
  EXPECT_TRUE(half.is_rational());
  EXPECT_EQ(half.exact(), Rational(1, 2));
  EXPECT_EQ(parse_theta("0.75").exact(), Rational(3, 4));
  EXPECT_EQ(format_theta(parse_theta("2/4")), "1/2");
  const ThetaSpec root = parse_theta("root:n=2,q=2");
  EXPECT_FALSE(root.is_rational());
  EXPECT_NEAR(root.value(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_THROW(root.exact(), InvalidArgument);
  EXPECT_EQ(format_theta(root), "root:n=2,q=2");
}

TEST(Theta, RangeErrors) {
  for (const char* literal : {"1", "0", "3/2", "-1/2", "root:n=1,q=2", "root:n=2,q=1", "root:n=2", "x"}) {
    EXPECT_ANY_THROW(parse_theta(literal)) << literal;
  }
}

TEST(Vector, LiteralAndJson) {
  const auto x = parse_vector<Rational>("1:1,2:0.5,5:-2");
  EXPECT_EQ(x.support_size(), 3U);
  EXPECT_EQ(x[2], Rational(1, 2));
  EXPECT_EQ(x[3], Rational(0));
  EXPECT_EQ(parse_vector_json<Rational>(R"({"1":1,"2":0.5,"5":-2})"), x);
  EXPECT_EQ(format_vector(x), "1:1,2:1/2,5:-2");
  EXPECT_TRUE(parse_vector<double>("3:0").is_zero());
  EXPECT_TRUE(parse_vector<double>("").is_zero());
  EXPECT_THROW(parse_vector<double>("0:1"), ParseError);
  EXPECT_THROW(parse_vector<double>("1:1,1:2"), ParseError);
  EXPECT_THROW(parse_vector<double>("1"), ParseError);
  EXPECT_THROW(parse_vector_json<double>("[1]"), ParseError);
}

TEST(Vector, Norms) {
  const auto x = parse_vector<double>("1:3,4:-4");
  EXPECT_DOUBLE_EQ(x.sup_norm(), 4.0);
  EXPECT_NEAR(x.lp_norm(2.0), 5.0, 1e-12);
  EXPECT_EQ(x.restrict_to_range(2, 9), parse_vector<double>("4:-4"));
  EXPECT_EQ(x.abs(), parse_vector<double>("1:3,4:4"));
  EXPECT_EQ(x.scaled(0.0), SparseVector<double>());
}
