#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gpcq/ecdf.hpp"

namespace gpcq {

enum class Variant { Cubic, Rational };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& name);

/// p(t) = c1 + c2 t + c3 t^2 + c4 t^3 with t = x - x_k.
///
/// value() and derivative() use the equivalent Hermite form in theta = t / h,
/// which reproduces the end slopes exactly; the coefficients feed the moments.
struct CubicPiece {
  double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;
  double h = 1.0, dy = 0.0, d0 = 0.0, d1 = 0.0;

  double value(double t) const {
    const double u = t / h;
    const double w = 1.0 - u;
    return c1 + dy * u * u * (3.0 - 2.0 * u) + h * u * (d0 * w * w - d1 * u * w);
  }
  double derivative(double t) const {
    const double u = t / h;
    const double w = 1.0 - u;
    return 6.0 * (dy / h) * u * w + d0 * w * (1.0 - 3.0 * u) + d1 * u * (3.0 * u - 2.0);
  }
};

/// p(t) = (alpha[0] + alpha[1] t + alpha[2] t^2) / (beta[0] + beta[1] t + beta[2] t^2)
/// with t = x - x_k.
///
/// The numerator is also kept as base * D(t) + excess[0] t + excess[1] t^2,
/// which avoids the cancellation in N - y_k D on short intervals. value() and
/// derivative() use the slope form in theta = t / h, whose derivative
/// numerator is a sum of non-negative terms.
struct RationalPiece {
  std::array<double, 3> alpha{};
  std::array<double, 3> beta{};
  double base = 0.0;
  std::array<double, 2> excess{};
  double h = 1.0, dy = 0.0, d0 = 0.0, d1 = 0.0;

  double denominator(double t) const { return beta[0] + t * (beta[1] + t * beta[2]); }
  double value(double t) const {
    if (dy == 0.0) return base;
    const double s = dy / h;
    const double u = t / h;
    const double uw = u * (1.0 - u);
    return base + dy * (s * u * u + d0 * uw) / (s + (d0 + d1 - 2.0 * s) * uw);
  }
  double derivative(double t) const {
    if (dy == 0.0) return 0.0;
    const double s = dy / h;
    const double u = t / h;
    const double w = 1.0 - u;
    const double den = s + (d0 + d1 - 2.0 * s) * u * w;
    return s * s * (d1 * u * u + 2.0 * s * u * w + d0 * w * w) / (den * den);
  }
};

/// Cubic Hermite piece on [0, h] matching values y0, y1 and slopes d0, d1.
CubicPiece cubic_hermite_piece(double h, double y0, double y1, double d0, double d1);

/// Monotone rational quadratic piece on [0, h] with end slopes d0, d1 >= 0.
RationalPiece rational_piece(double h, double y0, double y1, double d0, double d1);

struct InverseCdf {
  double x = 0.0;
  bool plateau = false;  // y fell on a flat stretch; x is its midpoint
};

/// Piecewise CDF model on the normalized coordinate, with the transform back
/// to the original variable. Immutable; safe for concurrent evaluation.
class DensityModel {
 public:
  /// Builds the pieces for given knots and knot slopes.
  static DensityModel from_slopes(Variant variant, MonotoneData knots, std::vector<double> slopes,
                                  TransformParams transform);

  Variant variant() const { return variant_; }
  const MonotoneData& knots() const { return knots_; }
  std::span<const double> slopes() const { return slopes_; }
  const TransformParams& transform() const { return transform_; }
  std::size_t piece_count() const { return knots_.size() - 1; }

  const std::vector<CubicPiece>& cubic_pieces() const;
  const std::vector<RationalPiece>& rational_pieces() const;

  /// Interval index k with x in [x_k, x_{k+1}], clamped to valid pieces.
  std::size_t locate(double x) const;

  double cdf(double x) const;
  double pdf(double x) const;
  /// Unclamped derivative of piece k at local offset t.
  double piece_derivative(std::size_t k, double t) const;
  double piece_value(std::size_t k, double t) const;

  InverseCdf inverse_cdf(double y) const;

  double cdf_original(double xhat) const { return cdf(transform_.forward(xhat)); }
  double pdf_original(double xhat) const { return pdf(transform_.forward(xhat)) / transform_.b; }

 private:
  DensityModel(Variant v, MonotoneData knots, std::vector<double> slopes, TransformParams t);

  Variant variant_;
  MonotoneData knots_;
  std::vector<double> slopes_;
  TransformParams transform_;
  std::variant<std::vector<CubicPiece>, std::vector<RationalPiece>> pieces_;
};

/// Three-point parabolic slope estimates at every knot; exact on quadratics.
std::vector<double> parabolic_slopes(const MonotoneData& data);

/// Clamps slope estimates into [0, 3 min(s_{k-1}, s_k)], zero next to flat
/// intervals, which keeps every cubic piece non-decreasing.
std::vector<double> project_slopes(const MonotoneData& data, std::span<const double> raw);

/// Weighted geometric means of neighbouring secants (one-sided at the ends).
std::vector<double> geometric_mean_slopes(const MonotoneData& data);

DensityModel fit_cubic(const MonotoneData& data,
                       TransformParams transform = TransformParams::identity());
DensityModel fit_rational(const MonotoneData& data,
                          TransformParams transform = TransformParams::identity());
DensityModel fit(Variant variant, const MonotoneData& data,
                 TransformParams transform = TransformParams::identity());

/// Invariant checks on a fitted model.
struct ModelCheck {
  bool monotone = true;             // cdf non-decreasing on the grid
  double min_cdf_step = 0.0;        // most negative grid increment
  double min_pdf = 0.0;             // most negative raw pdf on the grid
  double cdf_at_start = 0.0;
  double cdf_at_end = 1.0;
  double value_residual = 0.0;      // max |p(x_k) - y_k| from either side
  double slope_residual = 0.0;      // max |p'(x_k) - slope_k| / max(1, |slope_k|)
  double c1_jump = 0.0;             // max relative pdf jump at interior knots
  std::size_t grid_points = 0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

ModelCheck check_model(const DensityModel& model, std::size_t grid_points = 100000);

}  // namespace gpcq
