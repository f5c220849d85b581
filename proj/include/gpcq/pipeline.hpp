#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gpcq/ecdf.hpp"
#include "gpcq/interp.hpp"
#include "gpcq/moments.hpp"
#include "gpcq/orthopoly.hpp"
#include "gpcq/quadrature.hpp"

namespace gpcq {

struct FitOptions {
  int m = 45;
  double delta = 0.0;  // <= 0 selects 1e-3 of the sample range
};

/// Samples -> transform -> ECDF -> selected points.
struct PreparedPoints {
  MonotoneData points;
  TransformParams transform;
  std::size_t sample_count = 0;
  std::size_t distinct_samples = 0;
};

PreparedPoints prepare_points(std::span<const double> samples, const FitOptions& options = {});

struct GpcResult {
  MomentVector moments;
  RecurrenceResult recurrence;
  QuadratureRule rule;
  double epsilon = 0.0;  // orthonormality error
};

/// Moments up to 2 degree + 1, recurrence, Gauss rule and its orthonormality error.
GpcResult build_gpc(const DensityModel& model, int degree);

/// Inverse-CDF draws, returned in original coordinates.
std::vector<double> sample_density(const DensityModel& model, std::size_t count, std::uint64_t seed);

}  // namespace gpcq
