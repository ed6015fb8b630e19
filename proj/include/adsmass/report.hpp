#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "adsmass/mass.hpp"

// Report payloads and rendering: structured (stable-key JSON), human-readable
// tables, and the per-radius CSV of charge integrals.

namespace adsmass {

using Json = nlohmann::ordered_json;

// Structured format: indented JSON, trailing newline. Reparsing yields
// identical numeric payloads (full double precision).
std::string render_structured(const Json& report);

// Aligned key/value tables, one block per pipeline; matrices printed row by
// row with eigenvalues ascending.
std::string render_human(const Json& report);

// Columns: r, E0..E3, P01..P33 (nu-major), full precision.
std::string render_csv(const std::vector<RadiusSample>& samples);

// JSON helpers used by the runner.
Json json_complex_matrix(const Eigen::Matrix4cd& m);
Json json_vector(const Eigen::VectorXd& v);
Json json_hermitian(const Hermitian4& h);

}  // namespace adsmass
