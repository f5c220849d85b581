// Command-line front end: surrogate samples -> density -> gPC basis -> Gauss rule.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gpcq/error.hpp"
#include "gpcq/io.hpp"
#include "gpcq/pipeline.hpp"
#include "gpcq/random.hpp"
#include "gpcq/surrogate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gpcq;

namespace {

struct FitArgs {
  std::string model_file;
  std::string samples_file;
  std::string points_file;
  bool builtin = false;
  std::size_t samples = 1000000;
  std::uint64_t seed = 1;
  int m = 45;
  double delta = 0.0;
  std::string variant = "both";
  bool cubic = false;
  bool rational = false;
  std::string out = ".";
  std::size_t grid = 100000;
};

struct ModelArgs {
  std::string density;
  int degree = 4;
  std::string out;
  std::string csv;
};

struct SampleArgs {
  std::string density;
  std::size_t count = 1000;
  std::uint64_t seed = 1;
  std::string out;
};

struct PlotArgs {
  std::string density;
  std::size_t grid = 201;
  std::string out;
};

struct SimulateArgs {
  std::string model_file;
  bool builtin = false;
  std::size_t samples = 1000000;
  std::uint64_t seed = 1;
  std::string out;
};

std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

json check_json(const ModelCheck& c) {
  json failures = c.failures;
  return {{"passed", c.passed()},
          {"monotone", c.monotone},
          {"grid_points", c.grid_points},
          {"min_cdf_step", c.min_cdf_step},
          {"min_pdf", c.min_pdf},
          {"cdf_at_start", c.cdf_at_start},
          {"cdf_at_end", c.cdf_at_end},
          {"value_residual", c.value_residual},
          {"slope_residual", c.slope_residual},
          {"c1_jump", c.c1_jump},
          {"failures", failures}};
}

void emit(const json& report) { std::cout << report.dump(2) << '\n'; }

SurrogateModel resolve_model(const std::string& path, bool builtin) {
  if (!path.empty() && builtin) throw InvalidInput("--model and --builtin are mutually exclusive");
  return path.empty() ? synthetic_model() : load_model(path);
}

int cmd_fit(const FitArgs& a) {
  const int inputs = !a.model_file.empty() + !a.samples_file.empty() + !a.points_file.empty() + a.builtin;
  if (inputs > 1)
    throw InvalidInput("choose one input: --model, --samples-file, --points or --builtin");

  std::vector<Variant> variants;
  if (a.cubic || a.rational) {
    if (a.cubic) variants.push_back(Variant::Cubic);
    if (a.rational) variants.push_back(Variant::Rational);
  } else if (a.variant == "both") {
    variants = {Variant::Cubic, Variant::Rational};
  } else {
    variants = {variant_from_string(a.variant)};
  }

  json report{{"command", "fit"}};
  std::optional<MonotoneData> points;
  TransformParams transform;
  if (!a.points_file.empty()) {
    auto [data, t] = load_points_csv(a.points_file);
    points = std::move(data);
    transform = t;
    report["input"] = {{"points_file", a.points_file}};
  } else {
    std::vector<double> samples;
    if (!a.samples_file.empty()) {
      samples = load_samples(a.samples_file);
      report["input"] = {{"samples_file", a.samples_file}};
    } else {
      const SurrogateModel model = resolve_model(a.model_file, a.builtin);
      const SampleSet set = sample(model, a.samples, a.seed);
      samples = set.values;
      report["input"] = {{"model", model.to_string()},
                         {"seed", a.seed},
                         {"stream_scheme", set.stream_scheme}};
    }
    const PreparedPoints prep = prepare_points(samples, {a.m, a.delta});
    points = prep.points;
    transform = prep.transform;
    report["sample_count"] = prep.sample_count;
    report["distinct_samples"] = prep.distinct_samples;
  }
  report["m"] = a.m;
  report["n"] = points->size();
  report["transform"] = {{"a", transform.a}, {"b", transform.b}, {"delta", transform.delta}};
  report["knots"] = {{"x", to_vector(points->x())}, {"y", to_vector(points->y())}};

  fs::create_directories(a.out);
  bool all_passed = true;
  json models = json::array();
  for (Variant v : variants) {
    const DensityModel model = fit(v, *points, transform);
    const ModelCheck check = check_model(model, a.grid);
    const std::string path = (fs::path(a.out) / ("density-" + to_string(v) + ".json")).string();
    save_density(path, model);
    all_passed = all_passed && check.passed();
    models.push_back({{"variant", to_string(v)}, {"file", path}, {"checks", check_json(check)}});
    std::cerr << to_string(v) << ": " << points->size() << " knots, checks "
              << (check.passed() ? "pass" : "FAIL") << ", written to " << path << '\n';
    for (const auto& f : check.failures) std::cerr << "  " << f << '\n';
  }
  report["models"] = models;
  report["status"] = all_passed ? "pass" : "fail";
  emit(report);
  return all_passed ? 0 : 2;
}

void print_recurrence_table(const RecurrenceResult& r) {
  std::cerr << "  i  gamma_i                  kappa_i\n";
  for (std::size_t i = 0; i < r.rec.gamma.size(); ++i) {
    char line[128];
    std::snprintf(line, sizeof line, "%3zu  %-23.16Lg  %.16Lg\n", i, r.rec.gamma[i], r.rec.kappa[i]);
    std::cerr << line;
  }
  if (r.diagnostics.ill_conditioned)
    std::cerr << "warning: moment contraction lost most significant digits (cancellation ratio "
              << r.diagnostics.max_cancellation << ")\n";
}

int cmd_basis(const ModelArgs& a) {
  const DensityModel model = load_density(a.density);
  if (a.degree < 0 || a.degree > kMaxDegree)
    throw InvalidInput("degree cap exceeded: degree must lie in [0, " + std::to_string(kMaxDegree) + "]");
  const MomentVector moments = compute_moments(model, 2 * a.degree + 1);
  const RecurrenceResult result = compute_recurrence(moments, a.degree);
  json basis = basis_to_json(result);
  if (!a.out.empty()) write_text_file(a.out, basis.dump(2) + "\n");
  print_recurrence_table(result);
  emit({{"command", "basis"}, {"density", a.density}, {"basis", basis}, {"status", "pass"}});
  return 0;
}

int cmd_quad(const ModelArgs& a) {
  const DensityModel model = load_density(a.density);
  const GpcResult g = build_gpc(model, a.degree);
  const json rule = rule_to_json(g.rule, model.transform());
  if (!a.out.empty()) write_text_file(a.out, rule.dump(2) + "\n");
  if (!a.csv.empty()) {
    std::ostringstream buf;
    write_rule_csv(buf, g.rule, model.transform());
    write_text_file(a.csv, buf.str());
  }
  std::vector<double> moments;
  for (long double v : g.moments.values) moments.push_back(static_cast<double>(v));
  print_recurrence_table(g.recurrence);
  std::cerr << "  j  node                     weight\n";
  for (std::size_t j = 0; j < g.rule.size(); ++j) {
    char line[128];
    std::snprintf(line, sizeof line, "%3zu  %-23.16g  %.16g\n", j, g.rule.nodes[j], g.rule.weights[j]);
    std::cerr << line;
  }
  std::cerr << "orthonormality error: " << g.epsilon << '\n';
  emit({{"command", "quad"},
        {"density", a.density},
        {"degree", a.degree},
        {"moments", moments},
        {"rule", rule},
        {"epsilon", g.epsilon},
        {"status", "pass"}});
  return 0;
}

int cmd_sample(const SampleArgs& a) {
  if (a.out.empty()) throw InvalidInput("--out is required");
  const DensityModel model = load_density(a.density);
  const std::vector<double> draws = sample_density(model, a.count, a.seed);
  save_samples(a.out, draws);
  double mean = 0.0;
  for (double v : draws) mean += v;
  if (!draws.empty()) mean /= static_cast<double>(draws.size());
  std::cerr << "wrote " << draws.size() << " samples to " << a.out << '\n';
  emit({{"command", "sample"},
        {"density", a.density},
        {"count", a.count},
        {"seed", a.seed},
        {"stream_scheme", kStreamScheme},
        {"file", a.out},
        {"sample_mean", draws.empty() ? json(nullptr) : json(mean)},
        {"status", "pass"}});
  return 0;
}

int cmd_plotdata(const PlotArgs& a) {
  if (a.grid < 2) throw InvalidInput("grid must have at least 2 points");
  const DensityModel model = load_density(a.density);
  const TransformParams& t = model.transform();
  std::ostringstream buf;
  buf << "x_hat,cdf,pdf\n";
  bool monotone = true;
  double prev = 0.0;
  // The grid spans [a, a + b]; one padding row sits 5% beyond each end.
  std::vector<double> us{-0.05};
  for (std::size_t i = 0; i < a.grid; ++i)
    us.push_back(static_cast<double>(i) / static_cast<double>(a.grid - 1));
  us.push_back(1.05);
  for (double u : us) {
    const double xhat = t.inverse(u);
    const double cdf = model.cdf_original(xhat);
    const double pdf = model.pdf_original(xhat);
    if (cdf < prev) monotone = false;
    prev = cdf;
    char line[128];
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", xhat, cdf, pdf);
    buf << line;
  }
  if (a.out.empty())
    std::cout << buf.str();
  else
    write_text_file(a.out, buf.str());
  std::cerr << "plot data: " << us.size() << " rows" << (monotone ? "" : " (cdf not monotone)") << '\n';
  if (!a.out.empty())
    emit({{"command", "plotdata"}, {"file", a.out}, {"rows", us.size()}, {"status", monotone ? "pass" : "fail"}});
  return monotone ? 0 : 2;
}

int cmd_simulate(const SimulateArgs& a) {
  if (a.out.empty()) throw InvalidInput("--out is required");
  const SurrogateModel model = resolve_model(a.model_file, a.builtin);
  const SampleSet set = sample(model, a.samples, a.seed);
  save_samples(a.out, set.values);
  std::cerr << "wrote " << set.count() << " surrogate samples to " << a.out << '\n';
  emit({{"command", "simulate"},
        {"model", model.to_string()},
        {"count", set.count()},
        {"seed", set.seed},
        {"stream_scheme", set.stream_scheme},
        {"file", a.out},
        {"status", "pass"}});
  return 0;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return 1;
    case ErrorKind::Numerical: return 2;
    case ErrorKind::Io: return 3;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Density fitting, gPC bases and Gauss quadrature from surrogate samples"};
  app.require_subcommand(1);

  FitArgs fa;
  auto* fit_cmd = app.add_subcommand("fit", "Fit monotone CDF models to samples");
  fit_cmd->add_option("--model", fa.model_file, "Surrogate model file");
  fit_cmd->add_option("--samples-file", fa.samples_file, "File of precomputed samples");
  fit_cmd->add_option("--points", fa.points_file, "Replay a points CSV instead of sampling");
  fit_cmd->add_flag("--builtin", fa.builtin, "Use the built-in synthetic model (default input)");
  fit_cmd->add_option("--samples", fa.samples, "Monte Carlo sample count")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
  fit_cmd->add_option("--seed", fa.seed, "Random seed");
  fit_cmd->add_option("--m", fa.m, "Point control: consecutive points are within 1/m")->check(CLI::Range(2, 1 << 20));
  fit_cmd->add_option("--delta", fa.delta, "Support padding (default 1e-3 of the sample range)")->check(CLI::PositiveNumber);
  fit_cmd->add_option("--variant", fa.variant, "cubic, rational or both")->check(CLI::IsMember({"cubic", "rational", "both"}));
  fit_cmd->add_flag("--cubic", fa.cubic, "Emit the piecewise cubic model");
  fit_cmd->add_flag("--rational", fa.rational, "Emit the piecewise rational model");
  fit_cmd->add_option("--out", fa.out, "Output directory");
  fit_cmd->add_option("--grid", fa.grid, "Grid size for the invariant checks")->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));

  ModelArgs ba;
  auto* basis_cmd = app.add_subcommand("basis", "Orthonormal basis from a density file");
  basis_cmd->add_option("density", ba.density, "Density JSON")->required();
  basis_cmd->add_option("--degree", ba.degree, "Basis degree");
  basis_cmd->add_option("--out", ba.out, "Write the basis JSON here");

  ModelArgs qa;
  auto* quad_cmd = app.add_subcommand("quad", "Gauss quadrature rule from a density file");
  quad_cmd->add_option("density", qa.density, "Density JSON")->required();
  quad_cmd->add_option("--degree", qa.degree, "Basis degree (rule has degree + 1 nodes)");
  quad_cmd->add_option("--out", qa.out, "Write the rule JSON here");
  quad_cmd->add_option("--csv", qa.csv, "Write the rule CSV here");

  SampleArgs sa;
  auto* sample_cmd = app.add_subcommand("sample", "Inverse-CDF samples from a density file");
  sample_cmd->add_option("density", sa.density, "Density JSON")->required();
  sample_cmd->add_option("--count", sa.count, "Number of samples");
  sample_cmd->add_option("--seed", sa.seed, "Random seed");
  sample_cmd->add_option("--out", sa.out, "Output file")->required();

  PlotArgs pa;
  auto* plot_cmd = app.add_subcommand("plotdata", "CSV of cdf and pdf on a grid");
  plot_cmd->add_option("density", pa.density, "Density JSON")->required();
  plot_cmd->add_option("--grid", pa.grid, "Number of grid points");
  plot_cmd->add_option("--out", pa.out, "Output CSV (stdout if omitted)");

  SimulateArgs ma;
  auto* sim_cmd = app.add_subcommand("simulate", "Evaluate a surrogate model at random inputs");
  sim_cmd->add_option("--model", ma.model_file, "Surrogate model file");
  sim_cmd->add_flag("--builtin", ma.builtin, "Use the built-in synthetic model (default)");
  sim_cmd->add_option("--samples", ma.samples, "Sample count");
  sim_cmd->add_option("--seed", ma.seed, "Random seed");
  sim_cmd->add_option("--out", ma.out, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*fit_cmd) return cmd_fit(fa);
    if (*basis_cmd) return cmd_basis(ba);
    if (*quad_cmd) return cmd_quad(qa);
    if (*sample_cmd) return cmd_sample(sa);
    if (*plot_cmd) return cmd_plotdata(pa);
    if (*sim_cmd) return cmd_simulate(ma);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
