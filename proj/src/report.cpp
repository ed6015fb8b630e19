#include "adsmass/report.hpp"

#include <cstdio>
#include <sstream>

namespace adsmass {

namespace {

std::string full_precision(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void render_value(std::ostringstream& out, const Json& value, int indent);

void render_object(std::ostringstream& out, const Json& object, int indent) {
  std::size_t width = 0;
  for (const auto& [key, value] : object.items()) {
    (void)value;
    width = std::max(width, key.size());
  }
  for (const auto& [key, value] : object.items()) {
    out << std::string(static_cast<std::size_t>(indent), ' ');
    if (value.is_object() || (value.is_array() && !value.empty() &&
                              value.front().is_structured())) {
      out << key << ":\n";
      render_value(out, value, indent + 2);
    } else {
      out << key << std::string(width - key.size(), ' ') << " = ";
      render_value(out, value, 0);
      out << "\n";
    }
  }
}

void render_value(std::ostringstream& out, const Json& value, int indent) {
  if (value.is_object()) {
    render_object(out, value, indent);
  } else if (value.is_array()) {
    if (!value.empty() && value.front().is_structured()) {
      for (const auto& item : value) {
        render_value(out, item, indent);
        out << "\n";
      }
    } else {
      out << "[";
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i) out << ", ";
        render_value(out, value[i], 0);
      }
      out << "]";
    }
  } else if (value.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", value.get<double>());
    out << buf;
  } else if (value.is_string()) {
    out << value.get<std::string>();
  } else {
    out << value.dump();
  }
}

}  // namespace

std::string render_structured(const Json& report) {
  return report.dump(2) + "\n";
}

std::string render_human(const Json& report) {
  std::ostringstream out;
  out << "adsmass verification report\n";
  out << "===========================\n\n";
  for (const auto& [key, value] : report.items()) {
    out << key << "\n" << std::string(key.size(), '-') << "\n";
    render_value(out, value, 2);
    out << "\n";
  }
  return out.str();
}

std::string render_csv(const std::vector<RadiusSample>& samples) {
  std::ostringstream out;
  out << "r,E0,E1,E2,E3";
  for (int nu = 0; nu < 4; ++nu)
    for (int k = 1; k <= 3; ++k) out << ",P" << nu << k;
  out << "\n";
  for (const RadiusSample& s : samples) {
    out << full_precision(s.r);
    for (int nu = 0; nu < 4; ++nu) out << "," << full_precision(s.E[nu]);
    for (int nu = 0; nu < 4; ++nu)
      for (int k = 0; k < 3; ++k) out << "," << full_precision(s.P(nu, k));
    out << "\n";
  }
  return out.str();
}

Json json_complex_matrix(const Eigen::Matrix4cd& m) {
  Json rows = Json::array();
  for (int r = 0; r < 4; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 4; ++c) {
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(row);
  }
  return rows;
}

Json json_vector(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json json_hermitian(const Hermitian4& h) {
  Json out;
  out["matrix"] = json_complex_matrix(h.matrix);
  out["eigenvalues"] = json_vector(h.eigenvalues);
  out["leading_minors"] =
      Json::array({h.leading_minors[0], h.leading_minors[1],
                   h.leading_minors[2], h.leading_minors[3]});
  out["verdict"] = verdict_name(h.verdict);
  out["hermiticity_defect"] = h.hermiticity_defect;
  return out;
}

}  // namespace adsmass
