#include "gpcq/interp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gpcq/error.hpp"

namespace gpcq {

std::string to_string(Variant v) { return v == Variant::Cubic ? "cubic" : "rational"; }

Variant variant_from_string(const std::string& name) {
  if (name == "cubic") return Variant::Cubic;
  if (name == "rational") return Variant::Rational;
  throw InvalidInput("unknown interpolant variant '" + name + "' (expected cubic or rational)");
}

// ---------------------------------------------------------------------------
// Slopes

namespace {

std::vector<double> secants(const MonotoneData& d) {
  const auto x = d.x();
  const auto y = d.y();
  std::vector<double> s(d.size() - 1);
  for (std::size_t i = 0; i + 1 < d.size(); ++i) s[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  return s;
}

void require_three(const MonotoneData& d) {
  if (d.size() < 3) throw InvalidInput("interpolation needs at least 3 points");
}

// a^p * b^q for non-negative secants; any zero secant gives a zero slope.
double weighted_geomean(double a, double p, double b, double q) {
  if (!(a > 0.0) || !(b > 0.0)) return 0.0;
  const double v = std::exp(p * std::log(a) + q * std::log(b));
  return std::isfinite(v) && v >= 0.0 ? v : 0.0;
}

}  // namespace

std::vector<double> parabolic_slopes(const MonotoneData& data) {
  require_three(data);
  const auto x = data.x();
  const std::size_t n = data.size();
  const auto s = secants(data);
  std::vector<double> h(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) h[i] = x[i + 1] - x[i];

  std::vector<double> out(n);
  out[0] = (s[0] * (2.0 * h[0] + h[1]) - s[1] * h[0]) / (x[2] - x[0]);
  out[n - 1] = (s[n - 2] * (2.0 * h[n - 2] + h[n - 3]) - s[n - 3] * h[n - 2]) / (x[n - 1] - x[n - 3]);
  for (std::size_t k = 1; k + 1 < n; ++k)
    out[k] = (s[k] * h[k - 1] + s[k - 1] * h[k]) / (x[k + 1] - x[k - 1]);
  return out;
}

std::vector<double> project_slopes(const MonotoneData& data, std::span<const double> raw) {
  require_three(data);
  const std::size_t n = data.size();
  if (raw.size() != n) throw InvalidInput("slope vector length does not match the data");
  const auto s = secants(data);
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double left = k == 0 ? s[0] : s[k - 1];
    const double right = k == n - 1 ? s[n - 2] : s[k];
    out[k] = left * right > 0.0 ? std::min(std::max(0.0, raw[k]), 3.0 * std::min(left, right)) : 0.0;
  }
  return out;
}

std::vector<double> geometric_mean_slopes(const MonotoneData& data) {
  require_three(data);
  const auto x = data.x();
  const auto y = data.y();
  const std::size_t n = data.size();
  const auto s = secants(data);
  std::vector<double> out(n);

  {
    const double s31 = (y[2] - y[0]) / (x[2] - x[0]);
    const double w = x[2] - x[1];
    out[0] = weighted_geomean(s[0], (x[2] - x[0]) / w, s31, (x[0] - x[1]) / w);
  }
  {
    const double snn2 = (y[n - 1] - y[n - 3]) / (x[n - 1] - x[n - 3]);
    const double w = x[n - 2] - x[n - 3];
    out[n - 1] = weighted_geomean(s[n - 2], (x[n - 1] - x[n - 3]) / w, snn2, (x[n - 2] - x[n - 1]) / w);
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double w = x[k + 1] - x[k - 1];
    out[k] = weighted_geomean(s[k - 1], (x[k + 1] - x[k]) / w, s[k], (x[k] - x[k - 1]) / w);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pieces

CubicPiece cubic_hermite_piece(double h, double y0, double y1, double d0, double d1) {
  if (y0 == y1) return {y0, 0.0, 0.0, 0.0, h, 0.0, 0.0, 0.0};
  const double dy = y1 - y0;
  const double s = dy / h;
  return {y0, d0, (3.0 * s - 2.0 * d0 - d1) / h, (d0 + d1 - 2.0 * s) / (h * h), h, dy, d0, d1};
}

RationalPiece rational_piece(double h, double y0, double y1, double d0, double d1) {
  RationalPiece p;
  p.base = y0;
  p.h = h;
  if (y0 == y1) {
    p.alpha = {y0, 0.0, 0.0};
    p.beta = {1.0, 0.0, 0.0};
    return p;
  }
  const double dy = y1 - y0;
  const double s = dy / h;
  const double v = (d0 + d1) / s;
  p.dy = dy;
  p.d0 = d0;
  p.d1 = d1;
  p.beta = {h * h, (v - 2.0) * h, 2.0 - v};
  // w - v*y0 = d0*h exactly, so alpha = y0*beta + (0, d0 h^2, dy - d0 h).
  p.excess = {d0 * h * h, dy - d0 * h};
  p.alpha = {y0 * p.beta[0], y0 * p.beta[1] + p.excess[0], y0 * p.beta[2] + p.excess[1]};
  return p;
}

// ---------------------------------------------------------------------------
// DensityModel

DensityModel::DensityModel(Variant v, MonotoneData knots, std::vector<double> slopes,
                           TransformParams t)
    : variant_(v), knots_(std::move(knots)), slopes_(std::move(slopes)), transform_(t) {}

DensityModel DensityModel::from_slopes(Variant variant, MonotoneData knots,
                                       std::vector<double> slopes, TransformParams transform) {
  if (knots.size() < 3) throw InvalidInput("density model needs at least 3 knots");
  if (slopes.size() != knots.size()) throw InvalidInput("slope count does not match knot count");
  for (double d : slopes)
    if (!std::isfinite(d) || d < 0.0) throw InvalidInput("knot slopes must be finite and >= 0");
  if (!(transform.b > 0.0) || !std::isfinite(transform.a))
    throw InvalidInput("transform requires finite a and b > 0");

  DensityModel m(variant, std::move(knots), std::move(slopes), transform);
  const auto x = m.knots_.x();
  const auto y = m.knots_.y();
  const std::size_t pieces = m.knots_.size() - 1;
  if (variant == Variant::Cubic) {
    std::vector<CubicPiece> out(pieces);
    for (std::size_t k = 0; k < pieces; ++k)
      out[k] = cubic_hermite_piece(x[k + 1] - x[k], y[k], y[k + 1], m.slopes_[k], m.slopes_[k + 1]);
    m.pieces_ = std::move(out);
  } else {
    std::vector<RationalPiece> out(pieces);
    for (std::size_t k = 0; k < pieces; ++k)
      out[k] = rational_piece(x[k + 1] - x[k], y[k], y[k + 1], m.slopes_[k], m.slopes_[k + 1]);
    m.pieces_ = std::move(out);
  }
  return m;
}

const std::vector<CubicPiece>& DensityModel::cubic_pieces() const {
  if (variant_ != Variant::Cubic) throw InvalidInput("density model is not cubic");
  return std::get<std::vector<CubicPiece>>(pieces_);
}

const std::vector<RationalPiece>& DensityModel::rational_pieces() const {
  if (variant_ != Variant::Rational) throw InvalidInput("density model is not rational");
  return std::get<std::vector<RationalPiece>>(pieces_);
}

std::size_t DensityModel::locate(double x) const {
  const auto xs = knots_.x();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::ptrdiff_t k = (it - xs.begin()) - 1;
  return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(piece_count()) - 1));
}

double DensityModel::piece_value(std::size_t k, double t) const {
  return variant_ == Variant::Cubic ? std::get<0>(pieces_)[k].value(t)
                                    : std::get<1>(pieces_)[k].value(t);
}

double DensityModel::piece_derivative(std::size_t k, double t) const {
  return variant_ == Variant::Cubic ? std::get<0>(pieces_)[k].derivative(t)
                                    : std::get<1>(pieces_)[k].derivative(t);
}

double DensityModel::cdf(double x) const {
  const auto xs = knots_.x();
  const auto ys = knots_.y();
  if (std::isnan(x)) return x;
  if (x <= xs.front()) return 0.0;
  if (x >= xs.back()) return 1.0;
  const std::size_t k = locate(x);
  return std::clamp(piece_value(k, x - xs[k]), ys[k], ys[k + 1]);
}

double DensityModel::pdf(double x) const {
  const auto xs = knots_.x();
  if (std::isnan(x)) return x;
  if (x < xs.front() || x > xs.back()) return 0.0;
  const std::size_t k = locate(x);
  return std::max(0.0, piece_derivative(k, x - xs[k]));
}

InverseCdf DensityModel::inverse_cdf(double y) const {
  if (!(y >= 0.0 && y <= 1.0)) throw InvalidInput("inverse CDF argument must lie in [0, 1]");
  const auto xs = knots_.x();
  const auto ys = knots_.y();
  if (y == 0.0) return {xs.front(), false};
  if (y == 1.0) return {xs.back(), false};

  const auto lo = std::lower_bound(ys.begin(), ys.end(), y);
  const auto hi = std::upper_bound(ys.begin(), ys.end(), y);
  const std::size_t ilo = static_cast<std::size_t>(lo - ys.begin());
  const std::size_t ihi = static_cast<std::size_t>(hi - ys.begin());
  if (ihi - ilo >= 2) return {0.5 * (xs[ilo] + xs[ihi - 1]), true};
  if (ihi - ilo == 1) return {xs[ilo], false};

  const std::size_t k = ilo - 1;  // ys[k] < y < ys[k + 1]
  const double h = xs[k + 1] - xs[k];
  double t = h * (y - ys[k]) / (ys[k + 1] - ys[k]);

  if (variant_ == Variant::Rational) {
    // N(t) - y D(t) = E(t) - z D(t) with z = y - y_k.
    const RationalPiece& p = std::get<1>(pieces_)[k];
    const double z = y - p.base;
    const double qa = p.excess[1] - z * p.beta[2];
    const double qb = p.excess[0] - z * p.beta[1];
    const double qc = -z * p.beta[0];
    double root = t;
    if (std::abs(qa) * h <= 1e-14 * std::abs(qb)) {
      root = -qc / qb;
    } else {
      const double disc = std::max(0.0, qb * qb - 4.0 * qa * qc);
      const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
      const double r1 = q / qa;
      const double r2 = qc / q;
      const double slack = 1e-9 * h;
      root = (r1 >= -slack && r1 <= h + slack) ? r1 : r2;
    }
    if (std::isfinite(root)) t = std::clamp(root, 0.0, h);
  }

  // Safeguarded Newton on [0, h]: polishes the closed-form rational root and
  // solves the cubic outright.
  double a = 0.0, b = h;
  for (int it = 0; it < 200; ++it) {
    const double f = piece_value(k, t) - y;
    if (f == 0.0) break;
    if (f < 0.0) a = t; else b = t;
    const double d = piece_derivative(k, t);
    double next = d > 0.0 ? t - f / d : 0.5 * (a + b);
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    const double step = std::abs(next - t);
    t = next;
    if (step <= 1e-16 * (xs[k] + t) || b - a <= 1e-16 * (xs[k] + b)) break;
  }
  // Newton settles within an ulp or two; step to the neighbouring double
  // while that moves the CDF closer to y.
  double x = xs[k] + t;
  double err = std::abs(cdf(x) - y);
  for (int it = 0; it < 8 && err > 0.0; ++it) {
    const double up = std::nextafter(x, 2.0);
    const double down = std::nextafter(x, -1.0);
    const double eu = std::abs(cdf(up) - y);
    const double ed = std::abs(cdf(down) - y);
    if (eu < err && eu <= ed) {
      x = up;
      err = eu;
    } else if (ed < err) {
      x = down;
      err = ed;
    } else {
      break;
    }
  }
  return {x, false};
}

DensityModel fit_cubic(const MonotoneData& data, TransformParams transform) {
  return DensityModel::from_slopes(Variant::Cubic, data, project_slopes(data, parabolic_slopes(data)),
                                   transform);
}

DensityModel fit_rational(const MonotoneData& data, TransformParams transform) {
  return DensityModel::from_slopes(Variant::Rational, data, geometric_mean_slopes(data), transform);
}

DensityModel fit(Variant variant, const MonotoneData& data, TransformParams transform) {
  return variant == Variant::Cubic ? fit_cubic(data, transform) : fit_rational(data, transform);
}

// ---------------------------------------------------------------------------
// Checks

namespace {
constexpr double kCdfSlack = 4.0 * std::numeric_limits<double>::epsilon();
constexpr double kKnotTol = 1e-12;
}  // namespace

ModelCheck check_model(const DensityModel& model, std::size_t grid_points) {
  ModelCheck c;
  const auto xs = model.knots().x();
  const auto ys = model.knots().y();
  const auto slopes = model.slopes();
  const std::size_t n = xs.size();

  double scale = 1.0;
  for (std::size_t k = 0; k < n; ++k) scale = std::max(scale, slopes[k]);
  for (std::size_t k = 0; k + 1 < n; ++k)
    scale = std::max(scale, (ys[k + 1] - ys[k]) / (xs[k + 1] - xs[k]));

  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double h = xs[k + 1] - xs[k];
    c.value_residual = std::max({c.value_residual, std::abs(model.piece_value(k, 0.0) - ys[k]),
                                 std::abs(model.piece_value(k, h) - ys[k + 1])});
    const double left = model.piece_derivative(k, 0.0);
    const double right = model.piece_derivative(k, h);
    c.slope_residual = std::max({c.slope_residual,
                                 std::abs(left - slopes[k]) / std::max(1.0, slopes[k]),
                                 std::abs(right - slopes[k + 1]) / std::max(1.0, slopes[k + 1])});
    if (k + 2 < n) {
      const double next = model.piece_derivative(k + 1, 0.0);
      c.c1_jump = std::max(c.c1_jump, std::abs(right - next) / std::max(1.0, slopes[k + 1]));
    }
  }

  c.grid_points = std::max<std::size_t>(grid_points, 2);
  c.cdf_at_start = model.cdf(xs.front());
  c.cdf_at_end = model.cdf(xs.back());
  double prev = c.cdf_at_start;
  const double span = xs.back() - xs.front();
  for (std::size_t i = 0; i < c.grid_points; ++i) {
    const double x = xs.front() + span * static_cast<double>(i) / static_cast<double>(c.grid_points - 1);
    const double v = model.cdf(x);
    c.min_cdf_step = std::min(c.min_cdf_step, v - prev);
    prev = v;
    const std::size_t k = model.locate(x);
    c.min_pdf = std::min(c.min_pdf, model.piece_derivative(k, x - xs[k]));
  }
  c.monotone = c.min_cdf_step >= -kCdfSlack;

  if (!c.monotone) c.failures.push_back("cdf decreases on the evaluation grid");
  if (c.min_pdf < -1e-14 * scale) c.failures.push_back("pdf is negative on the evaluation grid");
  if (c.cdf_at_start != 0.0) c.failures.push_back("cdf(x_1) != 0");
  if (c.cdf_at_end != 1.0) c.failures.push_back("cdf(x_n) != 1");
  if (c.value_residual > kKnotTol) c.failures.push_back("knot value residual exceeds 1e-12");
  if (c.slope_residual > kKnotTol) c.failures.push_back("knot slope residual exceeds 1e-12");
  if (c.c1_jump > kKnotTol) c.failures.push_back("pdf jump at an interior knot exceeds 1e-12");
  return c;
}

}  // namespace gpcq
