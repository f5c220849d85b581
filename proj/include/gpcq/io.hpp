#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "gpcq/interp.hpp"
#include "gpcq/orthopoly.hpp"
#include "gpcq/quadrature.hpp"

namespace gpcq {

inline constexpr int kFormatVersion = 1;

/// Knots, slopes, transform and the derived piece coefficients. Reading
/// rebuilds the pieces from knots and slopes and rejects the document if the
/// stored coefficients disagree.
nlohmann::json density_to_json(const DensityModel& model);
DensityModel density_from_json(const nlohmann::json& doc);
void save_density(const std::string& path, const DensityModel& model);
DensityModel load_density(const std::string& path);

nlohmann::json basis_to_json(const RecurrenceResult& result);

/// Nodes and weights in normalized and original coordinates.
nlohmann::json rule_to_json(const QuadratureRule& rule, const TransformParams& transform);
void write_rule_csv(std::ostream& out, const QuadratureRule& rule, const TransformParams& transform);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace gpcq
