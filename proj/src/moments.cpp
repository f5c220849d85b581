#include "gpcq/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gpcq/error.hpp"
#include "gpcq/polynomial.hpp"

namespace gpcq {

namespace {

using Real = long double;
using Poly = std::vector<Real>;

void check_order(int kmax) {
  if (kmax < 0 || kmax > kMaxMomentOrder)
    throw InvalidInput("moment order must lie in [0, " + std::to_string(kMaxMomentOrder) + "]");
}

Real integrate_unit(const Poly& p) {
  Real s = 0.0L;
  for (std::size_t i = p.size(); i-- > 0;) s += p[i] / static_cast<Real>(i + 1);
  return s;
}

}  // namespace

MomentVector moments_cubic(const DensityModel& model, int kmax) {
  check_order(kmax);
  const auto& pieces = model.cubic_pieces();
  const auto xs = model.knots().x();
  MomentVector out;
  out.values.assign(static_cast<std::size_t>(kmax) + 1, 0.0L);
  for (std::size_t j = 0; j < pieces.size(); ++j) {
    const CubicPiece& c = pieces[j];
    const Real h = static_cast<Real>(xs[j + 1]) - static_cast<Real>(xs[j]);
    // rho(t) = c2 + 2 c3 t + 3 c4 t^2 on t in [0, h]; x^k = (x_j + t)^k.
    const Poly rho{c.c2, 2.0L * c.c3, 3.0L * c.c4};
    const Poly shift{static_cast<Real>(xs[j]), 1.0L};
    Poly power{1.0L};
    for (int k = 0; k <= kmax; ++k) {
      const Poly integrand = poly::multiply<Real>(power, rho);
      const Poly anti = poly::antiderivative<Real>(integrand);
      out.values[static_cast<std::size_t>(k)] += poly::horner<Real>(anti, h);
      power = poly::multiply<Real>(power, shift);
    }
  }
  return out;
}

RatioIntegral integrate_ratio(std::span<const long double> q, std::array<long double, 3> d,
                              long double h) {
  if (!(d[0] > 0.0L || d[0] < 0.0L)) throw NumericalError("denominator vanishes at the interval start");
  // Rescale to theta = t / h on [0, 1] and normalize D(0) = 1.
  Poly num(q.size());
  Real hp = h;
  for (std::size_t i = 0; i < q.size(); ++i, hp *= h) num[i] = q[i] * hp / d[0];
  const Real u1 = d[1] * h / d[0];
  const Real u2 = d[2] * h * h / d[0];

  RatioIntegral out;
  const Real vertex = u2 != 0.0L ? -u1 / (2.0L * u2) : -1.0L;
  Real umax = std::abs(u1 + u2);
  if (vertex > 0.0L && vertex < 1.0L) umax = std::max(umax, std::abs(u1 * vertex + u2 * vertex * vertex));

  if (std::abs(u1) + std::abs(u2) <= 1.0L && umax <= 0.25L) {
    // 1/D = sum_j (-u)^j, |u| <= 1/4 on [0, 1]; each term integrates exactly.
    out.form = RatioForm::Series;
    const Poly minus_u{0.0L, -u1, -u2};
    Poly term = num;
    Real sum = integrate_unit(term);
    Real bound = 1.0L;
    for (int j = 1; j < 400 && umax > 0.0L; ++j) {
      term = poly::multiply<Real>(term, minus_u);
      sum += integrate_unit(term);
      bound *= umax;
      if (bound < 1e-22L) break;
    }
    out.value = sum;
    return out;
  }

  const bool quadratic = std::abs(u2) > 1e-13L * (1.0L + std::abs(u1));
  if (!quadratic) {
    // Linear denominator 1 + u1 theta.
    out.form = RatioForm::Linear;
    const Poly den{1.0L, u1};
    const auto div = poly::divide<Real>(num, den);
    const Real r0 = div.remainder[0];
    out.value = integrate_unit(div.quotient) + r0 / u1 * std::log1p(u1);
    return out;
  }

  const Poly den{1.0L, u1, u2};
  const auto div = poly::divide<Real>(num, den);
  const Real r0 = div.remainder[0];
  const Real r1 = div.remainder[1];
  const Real poly_part = integrate_unit(div.quotient);
  // r1/(2 u2) ln D contributes ln D(1) - ln D(0) = ln(1 + u1 + u2).
  const Real log_part = r1 / (2.0L * u2) * std::log(std::abs(1.0L + u1 + u2));
  const Real lin = 2.0L * u2 * r0 - u1 * r1;
  const Real disc = 4.0L * u2 - u1 * u1;
  const Real disc_tol = 64.0L * std::numeric_limits<Real>::epsilon() * std::max(u1 * u1, std::abs(4.0L * u2));
  Real rest = 0.0L;
  if (disc > disc_tol) {
    out.form = RatioForm::ArcTan;
    const Real sq = std::sqrt(disc);
    rest = lin / (u2 * sq) * (std::atan((2.0L * u2 + u1) / sq) - std::atan(u1 / sq));
  } else if (disc < -disc_tol) {
    out.form = RatioForm::LogPoles;
    const Real sq = std::sqrt(-disc);
    auto g = [&](Real th) {
      const Real z = 2.0L * u2 * th + u1;
      return std::log(std::abs((z - sq) / (z + sq)));
    };
    rest = lin / (2.0L * u2 * sq) * (g(1.0L) - g(0.0L));
  } else {
    out.form = RatioForm::DoubleRoot;
    auto g = [&](Real th) { return -lin / (u2 * (2.0L * u2 * th + u1)); };
    rest = g(1.0L) - g(0.0L);
  }
  out.value = poly_part + log_part + rest;
  return out;
}

MomentVector moments_rational(const DensityModel& model, int kmax) {
  check_order(kmax);
  const auto& pieces = model.rational_pieces();
  const auto xs = model.knots().x();
  MomentVector out;
  out.values.assign(static_cast<std::size_t>(kmax) + 1, 0.0L);
  for (std::size_t j = 0; j < pieces.size(); ++j) {
    const RationalPiece& p = pieces[j];
    const Real x0 = xs[j];
    const Real x1 = xs[j + 1];
    const Real h = x1 - x0;
    // p = base + E/D with E(0) = 0. The constant part drops out of every
    // moment, leaving F_k = x1^k E(h)/D(h) - integral of k x^(k-1) E/D.
    const Poly n{0.0L, p.excess[0], p.excess[1]};
    const std::array<Real, 3> d{p.beta[0], p.beta[1], p.beta[2]};
    const Real p1 = poly::horner<Real>(n, h) / (d[0] + h * (d[1] + h * d[2]));
    const Poly shift{x0, 1.0L};

    out.values[0] += p1;
    Poly power{1.0L};  // (x0 + t)^(k-1)
    Real x1k = 1.0L;
    for (int k = 1; k <= kmax; ++k) {
      x1k *= x1;
      Poly q = poly::multiply<Real>(power, n);
      for (Real& c : q) c *= static_cast<Real>(k);
      const Real tail = integrate_ratio(q, d, h).value;
      out.values[static_cast<std::size_t>(k)] += x1k * p1 - tail;
      power = poly::multiply<Real>(power, shift);
    }
  }
  return out;
}

MomentVector compute_moments(const DensityModel& model, int kmax) {
  return model.variant() == Variant::Cubic ? moments_cubic(model, kmax)
                                           : moments_rational(model, kmax);
}

namespace {

// Bisection driver around the fixed 61-point Gauss-Kronrod pair. Boost
// reports the Kronrod-Gauss difference on the reference interval, so it is
// rescaled to [a, b] here. Each subinterval may contribute error in
// proportion to its length, plus a small absolute allowance that stops the
// bisection from chasing rounding noise near steep endpoints.
template <typename F>
double adaptive_gk(const F& f, double a, double b, double per_length, double noise, int depth) {
  using boost::math::quadrature::gauss_kronrod;
  double err = 0.0;
  const double v = gauss_kronrod<double, 61>::integrate(f, a, b, 0, 0.0, &err);
  err *= 0.5 * (b - a);
  if (err <= per_length * (b - a) + noise || err <= 1e-13 * std::abs(v) || depth == 0) return v;
  const double mid = 0.5 * (a + b);
  return adaptive_gk(f, a, mid, per_length, noise, depth - 1) +
         adaptive_gk(f, mid, b, per_length, noise, depth - 1);
}

}  // namespace

double numeric_moment_oracle(const DensityModel& model, int k) {
  if (k < 0) throw InvalidInput("moment order must be non-negative");
  const auto xs = model.knots().x();
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < xs.size(); ++j) {
    const double x0 = xs[j];
    const double h = xs[j + 1] - x0;
    auto f = [&](double t) { return std::pow(x0 + t, k) * std::max(0.0, model.piece_derivative(j, t)); };
    // The piece integral is at most (y_{j+1} - y_j) x_{j+1}^k.
    const double scale = (model.knots().y()[j + 1] - model.knots().y()[j]) * std::pow(xs[j + 1], k);
    total += adaptive_gk(f, 0.0, h, 1e-13 * scale / h, 1e-18 * scale, 40);
  }
  return total;
}

}  // namespace gpcq
