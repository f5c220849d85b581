#include <gtest/gtest.h>

#include <vector>

#include "gpcq/polynomial.hpp"

namespace poly = gpcq::poly;
using V = std::vector<double>;

TEST(Polynomial, HornerEvaluatesLowestDegreeFirst) {
  const V p{1.0, -2.0, 3.0};  // 1 - 2x + 3x^2
  EXPECT_DOUBLE_EQ(poly::horner<double>(p, 2.0), 9.0);
  EXPECT_DOUBLE_EQ(poly::horner<double>(V{}, 2.0), 0.0);
}

TEST(Polynomial, MultiplyConvolves) {
  const V a{1.0, 1.0};
  const V b{-1.0, 1.0};
  EXPECT_EQ(poly::multiply<double>(a, b), (V{-1.0, 0.0, 1.0}));
  EXPECT_TRUE(poly::multiply<double>(a, V{}).empty());
}

TEST(Polynomial, DerivativeAndAntiderivative) {
  const V p{4.0, 3.0, 6.0};
  EXPECT_EQ(poly::derivative<double>(p), (V{3.0, 12.0}));
  EXPECT_EQ(poly::derivative<double>(V{5.0}), (V{0.0}));
  const V anti = poly::antiderivative<double>(p);
  EXPECT_EQ(anti, (V{0.0, 4.0, 1.5, 2.0}));
  EXPECT_EQ(poly::derivative<double>(anti), p);
}

TEST(Polynomial, ShiftedPowerIsBinomial) {
  EXPECT_EQ(poly::shifted_power(2.0, 3), (V{8.0, 12.0, 6.0, 1.0}));
  EXPECT_EQ(poly::shifted_power(2.0, 0), (V{1.0}));
}

TEST(Polynomial, DivideRecombines) {
  const V num{5.0, -3.0, 0.0, 2.0, 1.0};
  const V den{1.0, 2.0, 3.0};
  const auto r = poly::divide<double>(num, den);
  ASSERT_EQ(r.remainder.size(), 2u);
  for (double x : {-1.5, 0.0, 0.3, 2.0}) {
    const double lhs = poly::horner<double>(num, x);
    const double rhs = poly::horner<double>(r.quotient, x) * poly::horner<double>(den, x) +
                       poly::horner<double>(r.remainder, x);
    EXPECT_NEAR(lhs, rhs, 1e-12 * (1.0 + std::abs(lhs)));
  }
}

TEST(Polynomial, DivideByHigherDegreeLeavesNumerator) {
  const auto r = poly::divide<double>(V{1.0, 2.0}, V{1.0, 0.0, 1.0});
  EXPECT_EQ(r.quotient, (V{0.0}));
  EXPECT_EQ(r.remainder, (V{1.0, 2.0}));
}

TEST(Polynomial, DivideByConstant) {
  const auto r = poly::divide<double>(V{2.0, 4.0}, V{2.0});
  EXPECT_EQ(r.quotient, (V{1.0, 2.0}));
  EXPECT_TRUE(r.remainder.empty());
}
