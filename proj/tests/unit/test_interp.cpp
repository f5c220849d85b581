#include <gtest/gtest.h>

#include <cmath>

#include "gpcq/error.hpp"
#include "gpcq/interp.hpp"
#include "gpcq/random.hpp"
#include "../support/corpus.hpp"

using namespace gpcq;

namespace {

MonotoneData diagonal() { return MonotoneData({0.0, 0.5, 1.0}, {0.0, 0.5, 1.0}); }

}  // namespace

TEST(Slopes, ParabolicExactOnLinearData) {
  const auto d = parabolic_slopes(diagonal());
  for (double v : d) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(Slopes, ParabolicExactOnQuadratic) {
  std::vector<double> x{0.0, 0.1, 0.35, 0.6, 1.0};
  std::vector<double> y;
  for (double v : x) y.push_back(v * v);
  const auto d = parabolic_slopes(MonotoneData(x, y));
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(d[i], 2.0 * x[i], 1e-14);
}

TEST(Slopes, HandProjection) {
  const MonotoneData data({0.0, 0.5, 1.0}, {0.0, 0.9, 1.0});
  const auto raw = parabolic_slopes(data);
  EXPECT_NEAR(raw[0], 2.6, 1e-14);
  EXPECT_NEAR(raw[1], 1.0, 1e-14);
  const std::vector<double> given{raw[0], 1.0, raw[2]};
  const auto p = project_slopes(data, given);
  EXPECT_NEAR(p[1], 0.6, 1e-15);
  EXPECT_NEAR(p[0], std::min(2.6, 3.0 * 1.8), 1e-14);
  EXPECT_DOUBLE_EQ(p[2], 0.0);  // raw end slope is negative, clamped to 0
}

TEST(Slopes, FlatNeighbourGivesZero) {
  const MonotoneData data({0.0, 0.4, 0.7, 1.0}, {0.0, 0.0, 0.5, 1.0});
  const std::vector<double> raw{1.0, 1.0, 1.0, 1.0};
  const auto p = project_slopes(data, raw);
  EXPECT_DOUBLE_EQ(p[0], 0.0);
  EXPECT_DOUBLE_EQ(p[1], 0.0);
  const auto g = geometric_mean_slopes(data);
  EXPECT_DOUBLE_EQ(g[0], 0.0);
  EXPECT_DOUBLE_EQ(g[1], 0.0);
  EXPECT_GT(g[2], 0.0);
}

TEST(Slopes, ProjectionIdentityInsideBox) {
  const auto p = project_slopes(diagonal(), std::vector<double>{1.0, 1.0, 1.0});
  EXPECT_EQ(p, (std::vector<double>{1.0, 1.0, 1.0}));
}

TEST(Slopes, GeometricMeanOnLinearData) {
  for (double v : geometric_mean_slopes(diagonal())) EXPECT_NEAR(v, 1.0, 1e-15);
}

TEST(Slopes, GeometricMeanHandValue) {
  const MonotoneData data({0.0, 0.25, 1.0}, {0.0, 0.5, 1.0});
  const auto g = geometric_mean_slopes(data);
  // interior: s0^(h1/(h0+h1)) s1^(h0/(h0+h1)) with s0 = 2, s1 = 2/3
  EXPECT_NEAR(g[1], std::pow(2.0, 0.75) * std::pow(2.0 / 3.0, 0.25), 1e-14);
}

TEST(FitCubic, DiagonalIsIdentity) {
  const DensityModel m = fit_cubic(diagonal());
  for (const CubicPiece& p : m.cubic_pieces()) {
    EXPECT_DOUBLE_EQ(p.c2, 1.0);
    EXPECT_NEAR(p.c3, 0.0, 1e-15);
    EXPECT_NEAR(p.c4, 0.0, 1e-15);
  }
  EXPECT_NEAR(m.cdf(0.3), 0.3, 1e-15);
  EXPECT_NEAR(m.pdf(0.7), 1.0, 1e-15);
  EXPECT_NEAR(m.inverse_cdf(0.3).x, 0.3, 1e-15);
}

TEST(FitCubic, FlatFirstPiece) {
  const DensityModel m = fit_cubic(MonotoneData({0.0, 0.5, 1.0}, {0.0, 0.0, 1.0}));
  const CubicPiece& p = m.cubic_pieces()[0];
  EXPECT_EQ(p.c1, 0.0);
  EXPECT_EQ(p.c2, 0.0);
  EXPECT_EQ(p.c3, 0.0);
  EXPECT_EQ(p.c4, 0.0);
  EXPECT_EQ(m.pdf(0.25), 0.0);
  EXPECT_EQ(m.cdf(0.4), 0.0);
}

TEST(FitCubic, CoefficientsMatchHermiteConditions) {
  const CubicPiece p = cubic_hermite_piece(0.2, 0.1, 0.4, 0.5, 2.0);
  const double h = 0.2;
  EXPECT_NEAR(p.c1 + h * (p.c2 + h * (p.c3 + h * p.c4)), 0.4, 1e-15);
  EXPECT_NEAR(p.c2 + h * (2.0 * p.c3 + 3.0 * h * p.c4), 2.0, 1e-13);
  EXPECT_NEAR(p.value(0.07), p.c1 + 0.07 * (p.c2 + 0.07 * (p.c3 + 0.07 * p.c4)), 1e-15);
  EXPECT_NEAR(p.derivative(0.07), p.c2 + 0.07 * (2.0 * p.c3 + 3.0 * 0.07 * p.c4), 1e-13);
}

TEST(FitRational, DiagonalIsIdentity) {
  const DensityModel m = fit_rational(diagonal());
  for (const RationalPiece& p : m.rational_pieces()) {
    EXPECT_NEAR(p.beta[1], 0.0, 1e-15);
    EXPECT_NEAR(p.beta[2], 0.0, 1e-15);
    EXPECT_NEAR(p.alpha[2], 0.0, 1e-15);
  }
  EXPECT_NEAR(m.cdf(0.3), 0.3, 1e-15);
  EXPECT_NEAR(m.pdf(0.3), 1.0, 1e-15);
}

TEST(FitRational, LocalCoefficientsMatchGlobalFormula) {
  // The published coefficients are in terms of x; ours are in t = x - x_k.
  const double xk = 0.3, xk1 = 0.45, yk = 0.2, yk1 = 0.5, dk = 1.1, dk1 = 3.4;
  const double s = (yk1 - yk) / (xk1 - xk);
  const double w = (yk1 * dk + yk * dk1) / s;
  const double v = (dk + dk1) / s;
  const double a1 = yk1 * xk * xk - w * xk * xk1 + yk * xk1 * xk1;
  const double a2 = w * (xk + xk1) - 2.0 * yk1 * xk - 2.0 * yk * xk1;
  const double a3 = yk1 - w + yk;
  const double b1 = xk * xk - v * xk * xk1 + xk1 * xk1;
  const double b2 = v * (xk + xk1) - 2.0 * xk - 2.0 * xk1;
  const double b3 = 2.0 - v;
  const RationalPiece p = rational_piece(xk1 - xk, yk, yk1, dk, dk1);
  for (double x : {0.3, 0.33, 0.4, 0.45}) {
    const double global = (a1 + x * (a2 + x * a3)) / (b1 + x * (b2 + x * b3));
    const double t = x - xk;
    const double local = (p.alpha[0] + t * (p.alpha[1] + t * p.alpha[2])) / p.denominator(t);
    EXPECT_NEAR(local, global, 1e-12);
    EXPECT_NEAR(p.value(t), global, 1e-12);
  }
  EXPECT_NEAR(p.value(0.0), yk, 1e-15);
  EXPECT_NEAR(p.value(xk1 - xk), yk1, 1e-15);
  EXPECT_NEAR(p.derivative(0.0), dk, 1e-13);
  EXPECT_NEAR(p.derivative(xk1 - xk), dk1, 1e-13);
}

TEST(Model, EndpointsAndOutside) {
  for (Variant v : {Variant::Cubic, Variant::Rational}) {
    const DensityModel m = fit(v, MonotoneData({0.0, 0.2, 0.5, 0.9, 1.0}, {0.0, 0.1, 0.6, 0.95, 1.0}));
    EXPECT_EQ(m.cdf(0.0), 0.0);
    EXPECT_EQ(m.cdf(1.0), 1.0);
    EXPECT_EQ(m.cdf(-0.5), 0.0);
    EXPECT_EQ(m.cdf(1.5), 1.0);
    EXPECT_EQ(m.pdf(-0.1), 0.0);
    EXPECT_EQ(m.pdf(1.1), 0.0);
    EXPECT_EQ(m.inverse_cdf(0.0).x, 0.0);
    EXPECT_EQ(m.inverse_cdf(1.0).x, 1.0);
    EXPECT_THROW(m.inverse_cdf(1.5), InvalidInput);
  }
}

TEST(Model, OriginalCoordinates) {
  const TransformParams t{2.0, 4.0, 0.1};
  const DensityModel m = fit_cubic(diagonal(), t);
  EXPECT_NEAR(m.cdf_original(3.0), 0.25, 1e-15);
  EXPECT_NEAR(m.pdf_original(3.0), 0.25, 1e-15);
}

TEST(Model, InvalidSlopes) {
  EXPECT_THROW(DensityModel::from_slopes(Variant::Cubic, diagonal(), {1.0, -1.0, 1.0}, {}),
               InvalidInput);
  EXPECT_THROW(DensityModel::from_slopes(Variant::Cubic, diagonal(), {1.0, 1.0}, {}), InvalidInput);
  EXPECT_THROW(variant_from_string("spline"), InvalidInput);
}

TEST(Model, PlateauInverseIsMidpoint) {
  const DensityModel m = fit_cubic(MonotoneData({0.0, 0.3, 0.6, 1.0}, {0.0, 0.5, 0.5, 1.0}));
  const InverseCdf inv = m.inverse_cdf(0.5);
  EXPECT_TRUE(inv.plateau);
  EXPECT_DOUBLE_EQ(inv.x, 0.45);
}

// Property checks over the randomized corpus.

TEST(Properties, PhysicalConsistency) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const PreparedPoints p = gpcq::testing::random_points(seed);
    for (Variant v : {Variant::Cubic, Variant::Rational}) {
      const ModelCheck c = check_model(fit(v, p.points, p.transform), 20000);
      EXPECT_TRUE(c.passed()) << "seed " << seed << " " << to_string(v) << ": "
                              << (c.failures.empty() ? "" : c.failures.front());
    }
  }
}

TEST(Properties, PdfMatchesFiniteDifferences) {
  RandomStream rng(3);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const PreparedPoints p = gpcq::testing::random_points(seed);
    for (Variant v : {Variant::Cubic, Variant::Rational}) {
      const DensityModel m = fit(v, p.points, p.transform);
      const auto xs = m.knots().x();
      for (std::size_t k = 0; k < m.piece_count(); ++k) {
        const double h = xs[k + 1] - xs[k];
        const double t = h * (0.2 + 0.6 * rng.uniform());
        const double e = 1e-4 * h;
        const double fd = (m.piece_value(k, t + e) - m.piece_value(k, t - e)) / (2.0 * e);
        const double d = m.piece_derivative(k, t);
        EXPECT_NEAR(fd, d, 1e-5 * std::max(1.0, std::abs(d)));
      }
    }
  }
}

TEST(Properties, InverseRoundTripOnSmoothData) {
  std::vector<double> x, y;
  for (int i = 0; i <= 20; ++i) {
    const double u = i / 20.0;
    x.push_back(u);
    y.push_back(u * u * (3.0 - 2.0 * u));
  }
  RandomStream rng(9);
  for (Variant v : {Variant::Cubic, Variant::Rational}) {
    const DensityModel m = fit(v, MonotoneData(x, y));
    for (int i = 0; i < 1000; ++i) {
      const double target = rng.uniform();
      const InverseCdf inv = m.inverse_cdf(target);
      EXPECT_FALSE(inv.plateau);
      EXPECT_NEAR(m.cdf(inv.x), target, 1e-14);
    }
  }
}

TEST(Properties, InverseIsWithinOneUlpOfBest) {
  // On steep pieces no double reproduces y to 1e-12; the inverse must still
  // land within the spacing of representable abscissae.
  RandomStream rng(21);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const PreparedPoints p = gpcq::testing::random_points(seed);
    for (Variant v : {Variant::Cubic, Variant::Rational}) {
      const DensityModel m = fit(v, p.points, p.transform);
      for (int i = 0; i < 200; ++i) {
        const double target = rng.uniform();
        const InverseCdf inv = m.inverse_cdf(target);
        if (inv.plateau) continue;
        const double ulp = std::nextafter(inv.x, 2.0) - inv.x;
        const double floor = m.pdf(inv.x) * ulp;
        EXPECT_LE(std::abs(m.cdf(inv.x) - target), std::max(1e-14, 1.01 * floor));
      }
    }
  }
}
