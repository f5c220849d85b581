#include "gpcq/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "gpcq/error.hpp"

namespace gpcq {

using nlohmann::json;

namespace {

std::vector<double> to_doubles(const std::vector<long double>& v) {
  return {v.begin(), v.end()};
}

json transform_json(const TransformParams& t) {
  return {{"a", t.a}, {"b", t.b}, {"delta", t.delta}};
}

std::vector<double> number_array(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_array())
    throw InvalidInput(std::string("density file: missing array '") + key + "'");
  std::vector<double> out;
  for (const auto& v : doc.at(key)) {
    if (!v.is_number()) throw InvalidInput(std::string("density file: non-numeric entry in '") + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

double number(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_number())
    throw InvalidInput(std::string("density file: missing number '") + key + "'");
  return doc.at(key).get<double>();
}

bool close(double stored, double rebuilt) {
  return std::abs(stored - rebuilt) <= 1e-12 * std::max(1.0, std::abs(rebuilt));
}

json pieces_json(const DensityModel& model) {
  json pieces = json::array();
  if (model.variant() == Variant::Cubic) {
    for (const CubicPiece& p : model.cubic_pieces()) pieces.push_back({p.c1, p.c2, p.c3, p.c4});
  } else {
    for (const RationalPiece& p : model.rational_pieces())
      pieces.push_back({{"alpha", p.alpha}, {"beta", p.beta}});
  }
  return pieces;
}

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

json density_to_json(const DensityModel& model) {
  const auto x = model.knots().x();
  const auto y = model.knots().y();
  const auto s = model.slopes();
  return {{"format", "gpcq-density"},
          {"format_version", kFormatVersion},
          {"variant", to_string(model.variant())},
          {"transform", transform_json(model.transform())},
          {"knots", {{"x", std::vector<double>(x.begin(), x.end())},
                     {"y", std::vector<double>(y.begin(), y.end())}}},
          {"slopes", std::vector<double>(s.begin(), s.end())},
          {"pieces", pieces_json(model)}};
}

DensityModel density_from_json(const json& doc) {
  if (!doc.is_object() || doc.value("format", "") != "gpcq-density")
    throw InvalidInput("not a density file (format tag 'gpcq-density' missing)");
  if (doc.value("format_version", 0) != kFormatVersion)
    throw InvalidInput("unsupported density format version");
  if (!doc.contains("variant") || !doc.at("variant").is_string())
    throw InvalidInput("density file: missing 'variant'");
  const Variant variant = variant_from_string(doc.at("variant").get<std::string>());
  if (!doc.contains("transform") || !doc.contains("knots"))
    throw InvalidInput("density file: missing 'transform' or 'knots'");
  const json& t = doc.at("transform");
  TransformParams transform{number(t, "a"), number(t, "b"), number(t, "delta")};
  const json& k = doc.at("knots");
  MonotoneData knots(number_array(k, "x"), number_array(k, "y"));
  DensityModel model =
      DensityModel::from_slopes(variant, std::move(knots), number_array(doc, "slopes"), transform);

  if (doc.contains("pieces")) {
    const json stored = doc.at("pieces");
    const json rebuilt = pieces_json(model);
    if (!stored.is_array() || stored.size() != rebuilt.size())
      throw InvalidInput("density file: piece count does not match the knots");
    for (std::size_t i = 0; i < stored.size(); ++i) {
      std::vector<double> a, b;
      if (variant == Variant::Cubic) {
        a = stored[i].get<std::vector<double>>();
        b = rebuilt[i].get<std::vector<double>>();
      } else {
        for (const char* key : {"alpha", "beta"}) {
          const auto sa = stored[i].at(key).get<std::vector<double>>();
          const auto ra = rebuilt[i].at(key).get<std::vector<double>>();
          a.insert(a.end(), sa.begin(), sa.end());
          b.insert(b.end(), ra.begin(), ra.end());
        }
      }
      if (a.size() != b.size())
        throw InvalidInput("density file: malformed piece " + std::to_string(i));
      for (std::size_t j = 0; j < a.size(); ++j)
        if (!close(a[j], b[j]))
          throw InvalidInput("density file: stored coefficients of piece " + std::to_string(i) +
                             " disagree with the knots and slopes");
    }
  }
  return model;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("error while writing '" + path + "'");
}

void save_density(const std::string& path, const DensityModel& model) {
  write_text_file(path, density_to_json(model).dump(2) + "\n");
}

DensityModel load_density(const std::string& path) {
  try {
    return density_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    throw InvalidInput("'" + path + "': " + e.what());
  }
}

json basis_to_json(const RecurrenceResult& result) {
  json phi = json::array();
  json monic = json::array();
  for (const auto& c : result.basis.phi) phi.push_back(to_doubles(c));
  for (const auto& c : result.basis.monic) monic.push_back(to_doubles(c));
  return {{"format", "gpcq-basis"},
          {"format_version", kFormatVersion},
          {"degree", result.basis.degree},
          {"gamma", to_doubles(result.rec.gamma)},
          {"kappa", to_doubles(result.rec.kappa)},
          {"norms", to_doubles(result.basis.norms)},
          {"monic_coeffs", monic},
          {"phi_coeffs", phi},
          {"coefficient_order", "lowest degree first"},
          {"diagnostics",
           {{"max_cancellation", result.diagnostics.max_cancellation},
            {"ill_conditioned", result.diagnostics.ill_conditioned}}}};
}

json rule_to_json(const QuadratureRule& rule, const TransformParams& transform) {
  std::vector<double> original;
  for (double x : rule.nodes) original.push_back(transform.inverse(x));
  return {{"format", "gpcq-rule"},
          {"format_version", kFormatVersion},
          {"transform", transform_json(transform)},
          {"nodes", rule.nodes},
          {"weights", rule.weights},
          {"nodes_original", original}};
}

void write_rule_csv(std::ostream& out, const QuadratureRule& rule, const TransformParams& transform) {
  out << "node,weight,node_original\n";
  for (std::size_t j = 0; j < rule.size(); ++j)
    out << fmt(rule.nodes[j]) << ',' << fmt(rule.weights[j]) << ','
        << fmt(transform.inverse(rule.nodes[j])) << '\n';
}

}  // namespace gpcq
