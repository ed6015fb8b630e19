#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "adsmass/mass.hpp"

// Sectioned key-value run configuration: parsing with line/column
// diagnostics, validation against the family registry, and canonical
// serialization (round-trip stable).

namespace adsmass {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line = 0, int column = 0);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Canonical pipeline order; `run` executes the selected subset in this order.
const std::vector<std::string>& pipeline_names();

struct RunConfig {
  // [run]
  std::vector<std::string> pipelines = pipeline_names();
  unsigned seed = 1;
  int threads = 1;

  // [family]
  std::string family = "ads";
  double kappa = 1.0;
  std::map<std::string, double> family_params;

  // [quadrature]
  QuadratureSpec quad;

  // [mass]
  std::vector<double> radii = {4.0, 4.5, 5.0, 5.5, 6.0};
  ExtrapolationConfig extrap;

  // [tolerances]
  double tol_clifford = 1e-15;
  double tol_killing = 1e-8;
  double tol_weitzenbock = 1e-5;
  double tol_identity = 1e-10;
  double tol_vacuum = 1e-7;
  double tol_rigidity = 1e-9;
  double tol_positivity = 1e-10;

  // [output]
  std::string format = "human";  // human | structured
  std::string report_path;       // empty -> stdout
  std::string csv_path;          // empty -> no CSV

  bool operator==(const RunConfig&) const = default;
};

// Throws ConfigError with position info on malformed text, unknown
// sections/keys, or failed validation.
RunConfig parse_config(const std::string& text);

// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

// FNV-1a hash of the canonical serialization, as fixed-width hex.
std::string config_hash(const RunConfig& config);

}  // namespace adsmass
