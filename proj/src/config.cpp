#include "adsmass/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <sstream>

#include "adsmass/initial_data.hpp"

namespace adsmass {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream stream(s);
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& value, int line, int column) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("expected a number, got '" + value + "'", line, column);
  }
}

int parse_int(const std::string& value, int line, int column) {
  int v = 0;
  auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError("expected an integer, got '" + value + "'", line,
                      column);
  }
  return v;
}

std::string format_number(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

const FamilyDescriptor* find_family(const std::string& name) {
  for (const auto& desc : family_registry()) {
    if (desc.name == name) return &desc;
  }
  return nullptr;
}

}  // namespace

ConfigError::ConfigError(const std::string& message, int line, int column)
    : std::runtime_error(line > 0 ? "config:" + std::to_string(line) + ":" +
                                        std::to_string(column) + ": " + message
                                  : "config: " + message),
      line_(line),
      column_(column) {}

const std::vector<std::string>& pipeline_names() {
  static const std::vector<std::string> names = {
      "clifford",   "killing", "weitzenbock", "decay",
      "energy-conditions", "mass",    "q-matrices",  "rigidity"};
  return names;
}

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  bool family_params_seen = false;

  std::string section;
  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const int column =
        static_cast<int>(raw.find_first_not_of(" \t")) + 1;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("unterminated section header", line_no, column);
      }
      section = trim(line.substr(1, line.size() - 2));
      static const std::vector<std::string> sections = {
          "run", "family", "quadrature", "mass", "tolerances", "output"};
      if (std::find(sections.begin(), sections.end(), section) ==
          sections.end()) {
        throw ConfigError("unknown section '" + section + "'", line_no,
                          column);
      }
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected 'key = value'", line_no, column);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", line_no, column);
    if (section.empty()) {
      throw ConfigError("key '" + key + "' outside any section", line_no,
                        column);
    }

    if (section == "run") {
      if (key == "pipelines") {
        config.pipelines = split_list(value);
      } else if (key == "seed") {
        config.seed = static_cast<unsigned>(parse_int(value, line_no, column));
      } else if (key == "threads") {
        config.threads = parse_int(value, line_no, column);
      } else {
        throw ConfigError("unknown key '" + key + "' in [run]", line_no,
                          column);
      }
    } else if (section == "family") {
      if (key == "name") {
        config.family = value;
      } else if (key == "kappa") {
        config.kappa = parse_double(value, line_no, column);
      } else {
        config.family_params[key] = parse_double(value, line_no, column);
        family_params_seen = true;
      }
    } else if (section == "quadrature") {
      if (key == "n_theta") {
        config.quad.n_theta = parse_int(value, line_no, column);
      } else if (key == "n_psi") {
        config.quad.n_psi = parse_int(value, line_no, column);
      } else {
        throw ConfigError("unknown key '" + key + "' in [quadrature]", line_no,
                          column);
      }
    } else if (section == "mass") {
      if (key == "radii") {
        config.radii.clear();
        for (const std::string& item : split_list(value)) {
          config.radii.push_back(parse_double(item, line_no, column));
        }
      } else if (key == "sigma_min") {
        config.extrap.sigma_min = parse_double(value, line_no, column);
      } else if (key == "sigma_max") {
        config.extrap.sigma_max = parse_double(value, line_no, column);
      } else if (key == "sigma_steps") {
        config.extrap.sigma_steps = parse_int(value, line_no, column);
      } else if (key == "fit_tolerance") {
        config.extrap.tolerance = parse_double(value, line_no, column);
      } else {
        throw ConfigError("unknown key '" + key + "' in [mass]", line_no,
                          column);
      }
    } else if (section == "tolerances") {
      double* slot = nullptr;
      if (key == "clifford") slot = &config.tol_clifford;
      else if (key == "killing") slot = &config.tol_killing;
      else if (key == "weitzenbock") slot = &config.tol_weitzenbock;
      else if (key == "identity") slot = &config.tol_identity;
      else if (key == "vacuum") slot = &config.tol_vacuum;
      else if (key == "rigidity") slot = &config.tol_rigidity;
      else if (key == "positivity") slot = &config.tol_positivity;
      if (slot == nullptr) {
        throw ConfigError("unknown key '" + key + "' in [tolerances]", line_no,
                          column);
      }
      *slot = parse_double(value, line_no, column);
    } else if (section == "output") {
      if (key == "format") {
        config.format = value;
      } else if (key == "report") {
        config.report_path = value;
      } else if (key == "csv") {
        config.csv_path = value;
      } else {
        throw ConfigError("unknown key '" + key + "' in [output]", line_no,
                          column);
      }
    }
  }

  // validation
  const FamilyDescriptor* desc = find_family(config.family);
  if (desc == nullptr) {
    throw ConfigError("unknown family '" + config.family + "'");
  }
  if (family_params_seen) {
    for (const auto& [key, value] : config.family_params) {
      (void)value;
      if (std::find(desc->parameter_names.begin(),
                    desc->parameter_names.end(),
                    key) == desc->parameter_names.end()) {
        throw ConfigError("family '" + config.family +
                          "' has no parameter '" + key + "'");
      }
    }
  }
  if (!(config.kappa > 0.0)) throw ConfigError("kappa must be positive");
  for (const std::string& p : config.pipelines) {
    if (std::find(pipeline_names().begin(), pipeline_names().end(), p) ==
        pipeline_names().end()) {
      throw ConfigError("unknown pipeline '" + p + "'");
    }
  }
  for (std::size_t i = 1; i < config.radii.size(); ++i) {
    if (!(config.radii[i] > config.radii[i - 1])) {
      throw ConfigError("radii not increasing");
    }
  }
  if (config.radii.size() < 3) throw ConfigError("need at least three radii");
  if (config.quad.n_theta <= 0 || config.quad.n_psi <= 0) {
    throw ConfigError("quadrature orders must be positive");
  }
  if (config.threads <= 0) throw ConfigError("threads must be positive");
  for (double t : {config.tol_clifford, config.tol_killing,
                   config.tol_weitzenbock, config.tol_identity,
                   config.tol_vacuum, config.tol_rigidity,
                   config.tol_positivity, config.extrap.tolerance}) {
    if (!(t > 0.0)) throw ConfigError("tolerances must be positive");
  }
  if (config.format != "human" && config.format != "structured") {
    throw ConfigError("format must be 'human' or 'structured'");
  }
  return config;
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream out;
  out << "[run]\n";
  out << "pipelines = ";
  for (std::size_t i = 0; i < c.pipelines.size(); ++i) {
    out << (i ? ", " : "") << c.pipelines[i];
  }
  out << "\n";
  out << "seed = " << c.seed << "\n";
  out << "threads = " << c.threads << "\n\n";

  out << "[family]\n";
  out << "name = " << c.family << "\n";
  out << "kappa = " << format_number(c.kappa) << "\n";
  for (const auto& [key, value] : c.family_params) {
    out << key << " = " << format_number(value) << "\n";
  }
  out << "\n[quadrature]\n";
  out << "n_theta = " << c.quad.n_theta << "\n";
  out << "n_psi = " << c.quad.n_psi << "\n";

  out << "\n[mass]\n";
  out << "radii = ";
  for (std::size_t i = 0; i < c.radii.size(); ++i) {
    out << (i ? ", " : "") << format_number(c.radii[i]);
  }
  out << "\n";
  out << "sigma_min = " << format_number(c.extrap.sigma_min) << "\n";
  out << "sigma_max = " << format_number(c.extrap.sigma_max) << "\n";
  out << "sigma_steps = " << c.extrap.sigma_steps << "\n";
  out << "fit_tolerance = " << format_number(c.extrap.tolerance) << "\n";

  out << "\n[tolerances]\n";
  out << "clifford = " << format_number(c.tol_clifford) << "\n";
  out << "killing = " << format_number(c.tol_killing) << "\n";
  out << "weitzenbock = " << format_number(c.tol_weitzenbock) << "\n";
  out << "identity = " << format_number(c.tol_identity) << "\n";
  out << "vacuum = " << format_number(c.tol_vacuum) << "\n";
  out << "rigidity = " << format_number(c.tol_rigidity) << "\n";
  out << "positivity = " << format_number(c.tol_positivity) << "\n";

  out << "\n[output]\n";
  out << "format = " << c.format << "\n";
  if (!c.report_path.empty()) out << "report = " << c.report_path << "\n";
  if (!c.csv_path.empty()) out << "csv = " << c.csv_path << "\n";
  return out.str();
}

std::string config_hash(const RunConfig& config) {
  const std::string text = serialize_config(config);
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char ch : text) {
    hash ^= ch;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace adsmass
