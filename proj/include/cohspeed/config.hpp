#pragma once

// JSON run configuration: parsing with line/column diagnostics, validation
// against the embedded schema (schema/config.schema.json), and conversion
// of matrices, states and grids. Complex entries are either a number or a
// [re, im] pair.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cohspeed/linalg.hpp"

namespace cohspeed {

using Json = nlohmann::json;

/// The schema shipped with the build.
const Json& config_schema();

/// Parses `text`; syntax errors become BadConfig with "source:line:col".
Json parse_config_text(const std::string& text, const std::string& source = "<config>");

/// Every violation as "<json-pointer>: <message>"; empty when valid.
std::vector<std::string> validate_against(const Json& doc, const Json& schema);

/// Reads, parses and validates a config file; throws BadConfig listing every violation.
Json load_config(const std::string& path);

/// Parses and validates in-memory text.
Json load_config_text(const std::string& text, const std::string& source = "<config>");

Complex to_complex(const Json& j, const std::string& path);
Vector to_vector(const Json& j, const std::string& path);
Matrix to_matrix(const Json& j, const std::string& path);

/// {t0 = 0, t1, steps = 100} -> steps + 1 points.
std::vector<double> to_grid(const Json& j, const std::string& path, std::size_t default_steps = 100);

/// State section of dimension d: amplitudes, density, or {"random": {rank, seed}}.
DensityMatrix to_density(const Json& j, int d, std::uint64_t seed, const std::string& path);
PureState to_pure_state(const Json& j, int d, std::uint64_t seed, const std::string& path);

}  // namespace cohspeed
