#include "adsmass/initial_data.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <stdexcept>

namespace adsmass {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Mat3 = Eigen::Matrix3d;
using DMat3 = std::array<Mat3, 3>;
using DDMat3 = std::array<std::array<Mat3, 3>, 3>;

double fd_step(int axis, const Point& p) {
  return axis == 0 ? 1e-4 * std::max(1.0, p.r) : 1e-4;
}

Point shifted(const Point& p, int axis, double delta) {
  Point q = p;
  if (axis == 0) q.r += delta;
  else if (axis == 1) q.theta += delta;
  else q.psi += delta;
  return q;
}

}  // namespace

InitialDataFamily::InitialDataFamily(std::string name, double kappa, double tau)
    : name_(std::move(name)), kappa_(kappa), tau_(tau) {
  if (!(kappa > 0.0)) {
    throw std::invalid_argument("initial data: kappa must be positive");
  }
}

void InitialDataFamily::require_valid(const Point& p) const {
  check_point(p);
  if (p.r <= min_radius()) {
    throw std::domain_error("initial data '" + name_ +
                            "': point below chart radius " +
                            std::to_string(min_radius()));
  }
}

std::array<Mat3, 3> InitialDataFamily::da(const Point& p) const {
  DMat3 out;
  for (int c = 0; c < 3; ++c) {
    const double h = fd_step(c, p);
    out[c] = (a(shifted(p, c, h)) - a(shifted(p, c, -h))) / (2.0 * h);
  }
  return out;
}

DDMat3 InitialDataFamily::dda(const Point& p) const {
  DDMat3 out;
  const Mat3 a0 = a(p);
  for (int c = 0; c < 3; ++c) {
    const double hc = fd_step(c, p);
    out[c][c] =
        (a(shifted(p, c, hc)) - 2.0 * a0 + a(shifted(p, c, -hc))) / (hc * hc);
    for (int e = c + 1; e < 3; ++e) {
      const double he = fd_step(e, p);
      Mat3 mixed = (a(shifted(shifted(p, c, hc), e, he)) -
                    a(shifted(shifted(p, c, hc), e, -he)) -
                    a(shifted(shifted(p, c, -hc), e, he)) +
                    a(shifted(shifted(p, c, -hc), e, -he))) /
                   (4.0 * hc * he);
      out[c][e] = mixed;
      out[e][c] = mixed;
    }
  }
  return out;
}

std::array<Mat3, 3> InitialDataFamily::dh(const Point& p) const {
  DMat3 out;
  for (int c = 0; c < 3; ++c) {
    const double hs = fd_step(c, p);
    out[c] = (h(shifted(p, c, hs)) - h(shifted(p, c, -hs))) / (2.0 * hs);
  }
  return out;
}

// -------- exact hyperbolic slice of AdS --------

namespace {

class AdsFamily final : public InitialDataFamily {
 public:
  explicit AdsFamily(double kappa) : InitialDataFamily("ads", kappa, 3.0) {}
  Mat3 a(const Point&) const override { return Mat3::Zero(); }
  Mat3 h(const Point&) const override { return Mat3::Zero(); }
  DMat3 da(const Point&) const override { return {Mat3::Zero(), Mat3::Zero(), Mat3::Zero()}; }
  DDMat3 dda(const Point&) const override {
    DDMat3 z;
    for (auto& row : z)
      for (auto& m : row) m.setZero();
    return z;
  }
  DMat3 dh(const Point&) const override { return {Mat3::Zero(), Mat3::Zero(), Mat3::Zero()}; }
  bool analytic_derivatives() const override { return true; }
  bool vacuum() const override { return true; }
};

// -------- Schwarzschild-AdS (Kottler) time slice --------
//
// Static slice metric V^{-1} drhat^2 + rhat^2 dOmega^2, V = 1 - 2m/rhat +
// kappa^2 rhat^2, rewritten in the geodesic radial coordinate
// r = s(rhat) = asinh(kappa rhat)/kappa - T(rhat),
// T(rhat) = int_rhat^inf [V^{-1/2} - (1 + kappa^2 u^2)^{-1/2}] du,
// which anchors the chart to the hyperbolic one at infinity. Then
// a = diag(0, alpha, alpha), alpha(r) = kappa^2 rhat^2 / sinh^2(kappa r) - 1,
// with alpha ~ (16 m kappa / 3) e^{-3 kappa r}.
class KottlerFamily final : public InitialDataFamily {
 public:
  KottlerFamily(double m, double kappa)
      : InitialDataFamily("kottler", kappa, 3.0), m_(m) {
    if (!(m > 0.0)) {
      throw std::invalid_argument("kottler: mass parameter must be positive");
    }
    horizon_ = find_horizon();
    min_radius_ = s_of_rhat(1.01 * horizon_);
  }

  Mat3 a(const Point& p) const override {
    const double al = alpha(p.r);
    Mat3 m = Mat3::Zero();
    m(1, 1) = al;
    m(2, 2) = al;
    return m;
  }
  Mat3 h(const Point&) const override { return Mat3::Zero(); }

  DMat3 da(const Point& p) const override {
    double al, dal, ddal;
    alpha_jet(p.r, al, dal, ddal);
    DMat3 out = {Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
    out[0](1, 1) = dal;
    out[0](2, 2) = dal;
    return out;
  }
  DDMat3 dda(const Point& p) const override {
    double al, dal, ddal;
    alpha_jet(p.r, al, dal, ddal);
    DDMat3 out;
    for (auto& row : out)
      for (auto& m : row) m.setZero();
    out[0][0](1, 1) = ddal;
    out[0][0](2, 2) = ddal;
    return out;
  }
  DMat3 dh(const Point&) const override {
    return {Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
  }

  bool analytic_derivatives() const override { return true; }
  bool vacuum() const override { return true; }
  double min_radius() const override { return min_radius_; }
  std::map<std::string, double> parameters() const override {
    return {{"m", m_}};
  }

 private:
  double V(double rhat) const {
    const double k = kappa();
    return 1.0 - 2.0 * m_ / rhat + k * k * rhat * rhat;
  }

  double find_horizon() const {
    // Unique positive root of the cubic kappa^2 rhat^3 + rhat - 2m = 0.
    double lo = 1e-12, hi = 1.0;
    while (V(hi) < 0.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (V(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

  // T(rhat) by the map u = rhat / x, x in (0,1], 64-point Gauss-Legendre.
  double T(double rhat) const {
    const double k = kappa();
    auto f = [&](double x) {
      const double u = rhat / x;
      const double t = 1.0 / std::sqrt(V(u)) -
                       1.0 / std::sqrt(1.0 + k * k * u * u);
      return t * rhat / (x * x);
    };
    return boost::math::quadrature::gauss<double, 64>::integrate(f, 0.0, 1.0);
  }

  double s_of_rhat(double rhat) const {
    return std::asinh(kappa() * rhat) / kappa() - T(rhat);
  }

  // Invert r = s(rhat) by Newton (ds/drhat = V^{-1/2}) with a bisection
  // safeguard; memoized per thread since the jets re-use the same radius.
  double rhat_of_s(double s) const {
    struct Cache {
      double m = 0.0, kappa = 0.0;  // owner identity by physical parameters
      double s = 0.0, rhat = 0.0;
    };
    thread_local Cache cache;
    if (cache.m == m_ && cache.kappa == kappa() && cache.s == s) {
      return cache.rhat;
    }

    const double k = kappa();
    double lo = 1.005 * horizon_;
    double hi = std::max(std::sinh(k * s) / k * 2.0 + 10.0, lo * 2.0 + 10.0);
    double x = std::clamp(std::sinh(k * s) / k, lo, hi);
    for (int it = 0; it < 100; ++it) {
      const double f = s_of_rhat(x) - s;
      if (std::abs(f) < 1e-13 * std::max(1.0, std::abs(s))) break;
      (f > 0.0 ? hi : lo) = x;
      const double step = -f * std::sqrt(V(x));
      double next = x + step;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      x = next;
    }
    cache = {m_, kappa(), s, x};
    return x;
  }

  double alpha(double r) const {
    const double k = kappa();
    const double rhat = rhat_of_s(r);
    const double sh = std::sinh(k * r);
    return k * k * rhat * rhat / (sh * sh) - 1.0;
  }

  void alpha_jet(double r, double& al, double& dal, double& ddal) const {
    const double k = kappa();
    const double rhat = rhat_of_s(r);
    const double rp = std::sqrt(V(rhat));          // drhat/dr
    const double rpp = m_ / (rhat * rhat) + k * k * rhat;
    const double S = std::sinh(k * r), C = std::cosh(k * r);
    al = k * k * rhat * rhat / (S * S) - 1.0;
    dal = 2.0 * k * k * rhat * rp / (S * S) -
          2.0 * k * k * k * rhat * rhat * C / (S * S * S);
    ddal = 2.0 * k * k * (rp * rp + rhat * rpp) / (S * S) -
           8.0 * k * k * k * rhat * rp * C / (S * S * S) -
           2.0 * k * k * k * k * rhat * rhat * (S * S - 3.0 * C * C) /
               (S * S * S * S);
  }

  double m_;
  double horizon_;
  double min_radius_;
};

// -------- smooth perturbation family --------

class PerturbationFamily final : public InitialDataFamily {
 public:
  PerturbationFamily(const PerturbationSpec& spec, double kappa)
      : InitialDataFamily("perturbation", kappa, spec.tau), spec_(spec) {
    if (!(spec.tau > 0.0)) {
      throw std::invalid_argument("perturbation: tau must be positive");
    }
    if (spec.angular_mode < 0) {
      throw std::invalid_argument("perturbation: angular_mode must be >= 0");
    }
  }

  Mat3 a(const Point& p) const override {
    const double e = spec_.eps * decay(p.r);
    const double st = std::sin(p.theta), ct = std::cos(p.theta);
    const double cp = std::cos(spec_.angular_mode * p.psi);
    const double sp = std::sin(spec_.angular_mode * p.psi);
    Mat3 m = Mat3::Zero();
    m(0, 0) = e * (1.0 + 0.5 * st * cp);
    m(1, 1) = -0.6 * e;
    m(2, 2) = 0.5 * e * (1.0 + 0.3 * st * sp);
    m(0, 1) = m(1, 0) = 0.25 * e * ct;
    m(1, 2) = m(2, 1) = 0.2 * e * st;
    return m;
  }

  Mat3 h(const Point& p) const override {
    if (spec_.h_profile == HProfile::None || spec_.h_eps == 0.0) {
      return Mat3::Zero();
    }
    const double e = spec_.h_eps * decay(p.r);
    const double st = std::sin(p.theta), ct = std::cos(p.theta);
    const double cp = std::cos(spec_.angular_mode * p.psi);
    const double scalar = e * (1.0 + 0.5 * st * cp);
    Mat3 m = Mat3::Zero();
    switch (spec_.h_profile) {
      case HProfile::Isotropic:
        m = scalar * Mat3::Identity();
        break;
      case HProfile::H11Only:
        m(0, 0) = scalar;
        break;
      case HProfile::Anisotropic:
        m(0, 0) = scalar;
        m(1, 1) = -0.4 * e;
        m(2, 2) = 0.3 * e * st;
        m(0, 1) = m(1, 0) = 0.2 * e * ct;
        m(1, 2) = m(2, 1) = 0.1 * e;
        break;
      case HProfile::None:
        break;
    }
    return m;
  }

  std::map<std::string, double> parameters() const override {
    return {{"eps", spec_.eps},
            {"tau", spec_.tau},
            {"angular_mode", static_cast<double>(spec_.angular_mode)},
            {"h_eps", spec_.h_eps},
            {"h_profile", static_cast<double>(static_cast<int>(spec_.h_profile))},
            {"tau_actual", spec_.tau_actual}};
  }

 private:
  double decay(double r) const {
    const double rate = spec_.tau_actual > 0.0 ? spec_.tau_actual : spec_.tau;
    return std::exp(-rate * kappa() * r);
  }

  PerturbationSpec spec_;
};

double param_or(const std::map<std::string, double>& params,
                const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

}  // namespace

std::shared_ptr<InitialDataFamily> family_ads(double kappa) {
  return std::make_shared<AdsFamily>(kappa);
}

std::shared_ptr<InitialDataFamily> family_kottler(double m, double kappa) {
  return std::make_shared<KottlerFamily>(m, kappa);
}

std::shared_ptr<InitialDataFamily> family_perturbation(
    const PerturbationSpec& spec, double kappa) {
  return std::make_shared<PerturbationFamily>(spec, kappa);
}

const std::vector<FamilyDescriptor>& family_registry() {
  static const std::vector<FamilyDescriptor> registry = {
      {"ads",
       {},
       [](const std::map<std::string, double>&, double kappa) {
         return family_ads(kappa);
       }},
      {"kottler",
       {"m"},
       [](const std::map<std::string, double>& params, double kappa) {
         return family_kottler(param_or(params, "m", 1.0), kappa);
       }},
      {"perturbation",
       {"eps", "tau", "angular_mode", "h_eps", "h_profile", "tau_actual"},
       [](const std::map<std::string, double>& params, double kappa) {
         PerturbationSpec spec;
         spec.eps = param_or(params, "eps", spec.eps);
         spec.tau = param_or(params, "tau", spec.tau);
         spec.angular_mode = static_cast<int>(
             param_or(params, "angular_mode", spec.angular_mode));
         spec.h_eps = param_or(params, "h_eps", spec.h_eps);
         const int profile =
             static_cast<int>(param_or(params, "h_profile", 0.0));
         if (profile < 0 || profile > 3) {
           throw std::invalid_argument(
               "perturbation: h_profile must be 0 (none), 1 (isotropic), "
               "2 (h11-only) or 3 (anisotropic)");
         }
         spec.h_profile = static_cast<HProfile>(profile);
         spec.tau_actual = param_or(params, "tau_actual", spec.tau_actual);
         return family_perturbation(spec, kappa);
       }}};
  return registry;
}

std::shared_ptr<InitialDataFamily> make_family(
    const std::string& name, const std::map<std::string, double>& params,
    double kappa) {
  for (const auto& desc : family_registry()) {
    if (desc.name == name) {
      for (const auto& [key, value] : params) {
        (void)value;
        if (std::find(desc.parameter_names.begin(), desc.parameter_names.end(),
                      key) == desc.parameter_names.end()) {
          throw std::invalid_argument("family '" + name +
                                      "': unknown parameter '" + key + "'");
        }
      }
      return desc.make(params, kappa);
    }
  }
  throw std::invalid_argument("unknown initial data family '" + name + "'");
}

// -------- decay validation --------

namespace {

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  return denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
}

}  // namespace

DecayReport validate_decay(const InitialDataFamily& data,
                           const std::vector<double>& radii, int n_theta,
                           int n_psi) {
  if (radii.size() < 2) {
    throw std::invalid_argument("validate_decay: need at least two radii");
  }
  const double tau = data.tau();
  const double kappa = data.kappa();

  // quantity evaluators, each returning the max-abs entry at a point
  struct Quantity {
    std::string name;
    std::function<double(const Point&)> sup;
  };
  const std::vector<Quantity> quantities = {
      {"a", [&](const Point& p) { return data.a(p).cwiseAbs().maxCoeff(); }},
      {"da",
       [&](const Point& p) {
         double m = 0.0;
         for (const auto& d : data.da(p)) m = std::max(m, d.cwiseAbs().maxCoeff());
         return m;
       }},
      {"dda",
       [&](const Point& p) {
         double m = 0.0;
         for (const auto& row : data.dda(p))
           for (const auto& d : row) m = std::max(m, d.cwiseAbs().maxCoeff());
         return m;
       }},
      {"h", [&](const Point& p) { return data.h(p).cwiseAbs().maxCoeff(); }},
      {"dh",
       [&](const Point& p) {
         double m = 0.0;
         for (const auto& d : data.dh(p)) m = std::max(m, d.cwiseAbs().maxCoeff());
         return m;
       }},
  };

  DecayReport report;
  report.tau = tau;
  report.tau_above_threshold = tau > 1.5;
  report.radii = radii;
  report.pass = report.tau_above_threshold;

  std::vector<double> kr(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) kr[i] = kappa * radii[i];

  for (const auto& q : quantities) {
    DecayQuantityReport qr;
    qr.quantity = q.name;
    double overall_max = 0.0;
    for (double r : radii) {
      double sup = 0.0;
      for (int it = 0; it < n_theta; ++it) {
        const double theta = kPi * (it + 0.5) / n_theta;
        for (int ip = 0; ip < n_psi; ++ip) {
          const double psi = 2.0 * kPi * ip / n_psi;
          sup = std::max(sup, q.sup(Point{r, theta, psi}));
        }
      }
      const double weighted = sup * std::exp(tau * kappa * r);
      qr.sup_weighted.push_back(weighted);
      overall_max = std::max(overall_max, weighted);
    }
    if (overall_max < 1e-13) {
      qr.growth_rate = 0.0;
      qr.bounded = true;
    } else {
      std::vector<double> logs(radii.size());
      for (std::size_t i = 0; i < radii.size(); ++i) {
        logs[i] = std::log(std::max(qr.sup_weighted[i], 1e-300));
      }
      qr.growth_rate = fit_slope(kr, logs);
      qr.bounded = qr.growth_rate < 0.05;
    }
    report.pass = report.pass && qr.bounded;
    report.quantities.push_back(std::move(qr));
  }
  return report;
}

// -------- constraint densities --------

ConstraintDensities constraint_densities(const InitialDataFamily& data,
                                         const Point& p) {
  const double kappa = data.kappa();
  const double scal = riemann(data, p).scalar();
  const Eigen::Matrix3d h = h_orthonormal(data, p);
  const HDerivatives dh = covariant_derivative_h(data, p);

  const double trh = h.trace();
  const double h2 = h.squaredNorm();

  ConstraintDensities out;
  out.mu = 0.5 * (scal + trh * trh - h2 + 6.0 * kappa * kappa -
                  4.0 * kappa * trh);
  out.omega_bar = -(dh.divergence - dh.grad_trace);
  out.margin = out.mu - out.omega_bar.norm();
  out.rho = 0.5 * (scal + trh * trh - h2) + 3.0 * kappa * kappa;
  out.current = dh.divergence - dh.grad_trace;
  out.margin_standard = out.rho - out.current.norm();
  return out;
}

// -------- rigidity residuals --------

RigidityResiduals rigidity_residuals(const InitialDataFamily& data,
                                     const Point& p, KillingVariant variant) {
  const CurvatureTensor R = riemann(data, p);
  const Eigen::Matrix3d h = h_orthonormal(data, p);
  const HDerivatives dh = covariant_derivative_h(data, p);
  const double kappa = data.kappa();

  RigidityResiduals out{0.0, 0.0};
  if (variant == KillingVariant::E0Killing) {
    const Eigen::Matrix3d ht = -h + kappa * Eigen::Matrix3d::Identity();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          for (int l = 0; l < 3; ++l) {
            const double res =
                R(i, j, k, l) + ht(i, k) * ht(j, l) - ht(i, l) * ht(j, k);
            out.gauss = std::max(out.gauss, std::abs(res));
          }
          // nabbar ht = -nabbar h since the kappa g term is parallel
          const double cod = -dh.grad[i](j, k) + dh.grad[j](i, k);
          out.codazzi = std::max(out.codazzi, std::abs(cod));
        }
  } else {
    const Eigen::Matrix3d id = Eigen::Matrix3d::Identity();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          for (int l = 0; l < 3; ++l) {
            const double res = R(i, j, k, l) +
                               kappa * kappa *
                                   (id(i, k) * id(j, l) - id(i, l) * id(j, k)) -
                               h(i, l) * h(j, k) + h(i, k) * h(j, l);
            out.gauss = std::max(out.gauss, std::abs(res));
          }
          const double cod = dh.grad[i](j, k) - dh.grad[j](i, k);
          out.codazzi = std::max(out.codazzi, std::abs(cod));
        }
  }
  return out;
}

}  // namespace adsmass
