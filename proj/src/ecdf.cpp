#include "gpcq/ecdf.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gpcq/error.hpp"

namespace gpcq {

EmpiricalCDF::EmpiricalCDF(std::vector<double> values) : sorted_(std::move(values)) {
  if (sorted_.empty()) throw InvalidInput("empirical CDF needs at least one sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCDF::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

std::vector<std::pair<double, double>> EmpiricalCDF::nodes() const {
  std::vector<std::pair<double, double>> out;
  const double n = static_cast<double>(sorted_.size());
  for (std::size_t i = 0; i < sorted_.size(); ++i) {
    if (i + 1 < sorted_.size() && sorted_[i + 1] == sorted_[i]) continue;
    out.emplace_back(sorted_[i], static_cast<double>(i + 1) / n);
  }
  return out;
}

double default_delta(std::span<const double> samples) {
  if (samples.empty()) throw InvalidInput("degenerate sample set: no samples");
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  return 1e-3 * (*hi - *lo);
}

std::pair<TransformParams, EmpiricalCDF> fit_transform(std::span<const double> samples,
                                                       double delta) {
  if (samples.size() < 2) throw InvalidInput("degenerate sample set: fewer than 2 samples");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InvalidInput("delta must be positive");
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  if (!std::isfinite(*lo) || !std::isfinite(*hi))
    throw InvalidInput("sample set contains non-finite values");
  if (*hi == *lo) throw InvalidInput("degenerate sample set: all samples are equal");
  TransformParams t;
  t.a = *lo - delta;
  t.b = *hi + delta - t.a;
  t.delta = delta;
  std::vector<double> x(samples.size());
  std::transform(samples.begin(), samples.end(), x.begin(),
                 [&](double v) { return t.forward(v); });
  return {t, EmpiricalCDF(std::move(x))};
}

// ---------------------------------------------------------------------------
// MonotoneData

MonotoneData::MonotoneData(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size()) throw InvalidInput("monotone data: x and y sizes differ");
  if (x_.size() < 2) throw InvalidInput("monotone data needs at least 2 points");
  if (x_.front() != 0.0 || y_.front() != 0.0)
    throw InvalidInput("monotone data must start at (0, 0)");
  if (x_.back() != 1.0 || y_.back() != 1.0) throw InvalidInput("monotone data must end at (1, 1)");
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
    if (!std::isfinite(x_[i + 1]) || !std::isfinite(y_[i + 1]))
      throw InvalidInput("monotone data contains non-finite values");
    if (!(x_[i] < x_[i + 1]))
      throw InvalidInput("monotone data: x must be strictly increasing (index " +
                         std::to_string(i + 1) + ")");
    if (!(y_[i] <= y_[i + 1]))
      throw InvalidInput("monotone data: y must be non-decreasing (index " + std::to_string(i + 1) +
                         ")");
  }
}

double MonotoneData::max_step() const {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x_.size(); ++i)
    s = std::max({s, x_[i + 1] - x_[i], y_[i + 1] - y_[i]});
  return s;
}

// ---------------------------------------------------------------------------
// Point selection

MonotoneData select_points(const EmpiricalCDF& ecdf, int m) {
  if (m < 2) throw InvalidInput("point control m must be >= 2");
  struct Pt {
    double x, y;
  };
  const auto ecdf_nodes = ecdf.nodes();
  if (ecdf_nodes.front().first <= 0.0 || ecdf_nodes.back().first >= 1.0)
    throw InvalidInput("normalized samples must lie strictly inside (0, 1)");

  std::vector<Pt> curve;
  curve.reserve(ecdf_nodes.size() + 2);
  curve.push_back({0.0, 0.0});
  for (const auto& [x, y] : ecdf_nodes) curve.push_back({x, y});
  curve.push_back({1.0, 1.0});
  const std::size_t last = curve.size() - 1;

  // Chords are kept a hair below 1/m so rounding cannot push a step over.
  const double reach = (1.0 / m) * (1.0 - 1e-12);
  auto chord = [](Pt a, Pt b) { return std::hypot(b.x - a.x, b.y - a.y); };

  std::vector<double> xs{0.0};
  std::vector<double> ys{0.0};
  Pt cur{0.0, 0.0};
  std::size_t seg = 0;  // cur lies on [curve[seg], curve[seg + 1])
  while (true) {
    std::size_t j = seg + 1;
    if (chord(cur, curve[j]) <= reach) {
      while (j < last && chord(cur, curve[j + 1]) <= reach) ++j;
      cur = curve[j];
      seg = j;
    } else {
      const Pt target = curve[seg + 1];
      const double len = chord(cur, target);
      const double f = reach / len;
      const Pt next{cur.x + f * (target.x - cur.x), cur.y + f * (target.y - cur.y)};
      if (!(next.x > cur.x))
        throw NumericalError("point selection cannot resolve a near-vertical ECDF jump");
      cur = next;
    }
    xs.push_back(cur.x);
    ys.push_back(cur.y);
    if (seg == last) break;
  }
  // Exact pinning of the final point.
  xs.back() = 1.0;
  ys.back() = 1.0;
  if (xs.size() > ecdf_nodes.size() + 2)
    throw InvalidInput("m = " + std::to_string(m) + " needs " + std::to_string(xs.size()) +
                       " points but the samples resolve only " +
                       std::to_string(ecdf_nodes.size()) + " distinct values");
  return MonotoneData(std::move(xs), std::move(ys));
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool parse_double(std::string_view s, double& out) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return !s.empty() && res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

void write_points_csv(std::ostream& out, const MonotoneData& data, const TransformParams& t) {
  out << "# transform a=" << fmt(t.a) << " b=" << fmt(t.b) << " delta=" << fmt(t.delta) << '\n';
  out << "x,y\n";
  for (std::size_t i = 0; i < data.size(); ++i)
    out << fmt(data.x()[i]) << ',' << fmt(data.y()[i]) << '\n';
}

void save_points_csv(const std::string& path, const MonotoneData& data, const TransformParams& t) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write points file '" + path + "'");
  write_points_csv(out, data, t);
  if (!out) throw IoError("error while writing '" + path + "'");
}

std::pair<MonotoneData, TransformParams> read_points_csv(std::istream& in) {
  TransformParams t = TransformParams::identity();
  std::vector<double> xs, ys;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view v(line);
    if (v.empty() || v == "\r") continue;
    if (v.front() == '#') {
      std::istringstream ss{std::string(v.substr(1))};
      std::string word;
      while (ss >> word) {
        const auto eq = word.find('=');
        if (eq == std::string::npos) continue;
        double val = 0.0;
        if (!parse_double(std::string_view(word).substr(eq + 1), val)) continue;
        const std::string key = word.substr(0, eq);
        if (key == "a") t.a = val;
        if (key == "b") t.b = val;
        if (key == "delta") t.delta = val;
      }
      continue;
    }
    const auto comma = v.find(',');
    double x = 0.0, y = 0.0;
    const bool ok = comma != std::string_view::npos && parse_double(v.substr(0, comma), x) &&
                    parse_double(v.substr(comma + 1), y);
    if (!ok) {
      if (first) {
        first = false;
        continue;
      }
      throw InvalidInput("points file line " + std::to_string(lineno) + ": expected 'x,y'");
    }
    first = false;
    xs.push_back(x);
    ys.push_back(y);
  }
  if (!(t.b > 0.0) || !(t.delta >= 0.0)) throw InvalidInput("points file: invalid transform");
  return {MonotoneData(std::move(xs), std::move(ys)), t};
}

std::pair<MonotoneData, TransformParams> load_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open points file '" + path + "'");
  return read_points_csv(in);
}

}  // namespace gpcq
