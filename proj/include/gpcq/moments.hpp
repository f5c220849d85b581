#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "gpcq/interp.hpp"

namespace gpcq {

/// Highest monomial moment order the library will compute (2 * 10 + 2).
inline constexpr int kMaxMomentOrder = 22;

/// M_0 .. M_kmax of a fitted density, held in extended precision.
struct MomentVector {
  std::vector<long double> values;

  std::size_t size() const { return values.size(); }
  int max_order() const { return static_cast<int>(values.size()) - 1; }
  double operator[](std::size_t k) const { return static_cast<double>(values.at(k)); }
};

/// Per-piece closed-form integrals of x^k p'(x) for the cubic variant.
MomentVector moments_cubic(const DensityModel& model, int kmax);

/// Integration by parts plus long division for the rational variant.
MomentVector moments_rational(const DensityModel& model, int kmax);

MomentVector compute_moments(const DensityModel& model, int kmax);

/// Which closed form integrate_ratio() used.
enum class RatioForm {
  Series,      // 1/D expanded as a convergent geometric series
  ArcTan,      // quadratic D without real roots
  LogPoles,    // quadratic D with two real roots outside the interval
  DoubleRoot,  // quadratic D with a double root
  Linear,      // linear D
};

struct RatioIntegral {
  long double value = 0.0L;
  RatioForm form = RatioForm::Series;
};

/// Integral over [0, h] of q(t) / (d[0] + d[1] t + d[2] t^2), where D does not
/// vanish on [0, h]. Coefficients are lowest degree first.
RatioIntegral integrate_ratio(std::span<const long double> q, std::array<long double, 3> d,
                              long double h);

/// Adaptive Gauss-Kronrod integral of x^k pdf(x), piece by piece.
double numeric_moment_oracle(const DensityModel& model, int k);

}  // namespace gpcq
