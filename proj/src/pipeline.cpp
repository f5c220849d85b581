#include "gpcq/pipeline.hpp"

#include "gpcq/error.hpp"
#include "gpcq/random.hpp"

namespace gpcq {

PreparedPoints prepare_points(std::span<const double> samples, const FitOptions& options) {
  if (samples.size() < 2) throw InvalidInput("degenerate sample set: fewer than 2 samples");
  const double delta = options.delta > 0.0 ? options.delta : default_delta(samples);
  auto [transform, ecdf] = fit_transform(samples, delta);
  PreparedPoints out{select_points(ecdf, options.m), transform, samples.size(),
                     ecdf.nodes().size()};
  return out;
}

GpcResult build_gpc(const DensityModel& model, int degree) {
  if (degree < 0 || degree > kMaxDegree)
    throw InvalidInput("degree cap exceeded: degree must lie in [0, " + std::to_string(kMaxDegree) +
                       "]");
  GpcResult out{compute_moments(model, 2 * degree + 1), {}, {}, 0.0};
  out.recurrence = compute_recurrence(out.moments, degree);
  out.rule = gauss_rule(out.recurrence.rec);
  out.epsilon = orthonormality_error(out.recurrence.basis, out.rule);
  return out;
}

std::vector<double> sample_density(const DensityModel& model, std::size_t count, std::uint64_t seed) {
  RandomStream rng(seed);
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(model.transform().inverse(model.inverse_cdf(rng.uniform()).x));
  return out;
}

}  // namespace gpcq
