#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gpcq {

struct Distribution {
  enum class Kind { Gaussian, Uniform };

  Kind kind = Kind::Gaussian;
  double first = 0.0;   // mean, or lower bound
  double second = 1.0;  // standard deviation, or upper bound

  static Distribution gaussian(double mean, double stddev);
  static Distribution uniform(double lo, double hi);

  double mean() const;
  double variance() const;

  bool operator==(const Distribution&) const = default;
};

struct Variable {
  std::string name;
  Distribution distribution;

  bool operator==(const Variable&) const = default;
};

namespace expr {
struct Node;
}

/// A scalar expression f(xi_1..xi_d) over declared random variables.
/// Immutable once parsed; safe for concurrent evaluation.
class SurrogateModel {
 public:
  /// Parses declarations `name ~ N(mean, stddev)` / `name ~ U(lo, hi)` and a
  /// single `f = <expr>` statement. Statements end at ';' or a newline, and
  /// '#' starts a comment. Throws ParseError.
  static SurrogateModel parse(std::string_view source);

  double evaluate(std::span<const double> point) const;

  /// Canonical text; parse(to_string()) reproduces an equal model.
  std::string to_string() const;

  const std::vector<Variable>& variables() const { return variables_; }
  std::size_t dimension() const { return variables_.size(); }

  bool operator==(const SurrogateModel& other) const;

 private:
  SurrogateModel(std::vector<Variable> variables, std::shared_ptr<const expr::Node> root);

  std::vector<Variable> variables_;
  std::shared_ptr<const expr::Node> root_;
};

/// The four-variable benchmark model used throughout the examples.
SurrogateModel synthetic_model();
extern const char* const kSyntheticModelSource;

SurrogateModel load_model(const std::string& path);

struct SampleSet {
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::string stream_scheme;

  std::size_t count() const { return values.size(); }
};

/// Draws `count` i.i.d. parameter points and evaluates the model at each.
SampleSet sample(const SurrogateModel& model, std::size_t count, std::uint64_t seed);

/// Plain text: one value per line, or CSV whose first column is `value`.
/// A header line is detected by the failure to parse it as a number.
std::vector<double> read_samples(std::istream& in);
std::vector<double> load_samples(const std::string& path);
void write_samples(std::ostream& out, std::span<const double> values);
void save_samples(const std::string& path, std::span<const double> values);

}  // namespace gpcq
