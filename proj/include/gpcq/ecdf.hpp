#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gpcq {

/// Affine map x = (xhat - a) / b into the unit interval.
struct TransformParams {
  double a = 0.0;
  double b = 1.0;
  double delta = 0.0;  // padding used when fitting; 0 for the identity

  double forward(double xhat) const { return (xhat - a) / b; }
  double inverse(double x) const { return a + b * x; }

  static TransformParams identity() { return {}; }

  bool operator==(const TransformParams&) const = default;
};

class EmpiricalCDF {
 public:
  /// Takes normalized values; sorts them.
  explicit EmpiricalCDF(std::vector<double> values);

  /// Fraction of samples <= x (right-continuous step function).
  double operator()(double x) const;

  std::size_t count() const { return sorted_.size(); }
  std::span<const double> sorted_values() const { return sorted_; }

  /// Distinct abscissae with the ECDF value reached at each.
  std::vector<std::pair<double, double>> nodes() const;

 private:
  std::vector<double> sorted_;
};

/// 10^-3 of the sample range.
double default_delta(std::span<const double> samples);

/// a = min - delta, b = max + delta - a; returns the normalized ECDF.
std::pair<TransformParams, EmpiricalCDF> fit_transform(std::span<const double> samples,
                                                       double delta);

/// Monotone interpolation data: strictly increasing x, non-decreasing y,
/// pinned to (0, 0) and (1, 1).
class MonotoneData {
 public:
  MonotoneData(std::vector<double> x, std::vector<double> y);

  std::size_t size() const { return x_.size(); }
  std::span<const double> x() const { return x_; }
  std::span<const double> y() const { return y_; }

  /// Largest |dx| or |dy| over consecutive points.
  double max_step() const;

  bool operator==(const MonotoneData&) const = default;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

/// Walks the ECDF (joined linearly between its distinct nodes) from (0, 0)
/// to (1, 1), emitting the farthest node within chord distance 1/m of the
/// previous point; a segment that is longer than 1/m on its own is cut at
/// chord 1/m. Every step therefore satisfies |dx|, |dy| <= 1/m.
MonotoneData select_points(const EmpiricalCDF& ecdf, int m);

void write_points_csv(std::ostream& out, const MonotoneData& data, const TransformParams& t);
void save_points_csv(const std::string& path, const MonotoneData& data, const TransformParams& t);
std::pair<MonotoneData, TransformParams> read_points_csv(std::istream& in);
std::pair<MonotoneData, TransformParams> load_points_csv(const std::string& path);

}  // namespace gpcq
