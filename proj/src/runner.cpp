#include "adsmass/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <optional>
#include <random>

#include "adsmass/spinor_fields.hpp"

namespace adsmass {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr const char* kVersion = "0.1.0";

std::string iso_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

Point random_point(std::mt19937& rng, double r_lo, double r_hi) {
  std::uniform_real_distribution<double> ur(r_lo, r_hi);
  std::uniform_real_distribution<double> ut(0.3, kPi - 0.3);
  std::uniform_real_distribution<double> up(0.0, 2.0 * kPi);
  return Point{ur(rng), ut(rng), up(rng)};
}

Eigen::Vector4cd random_lambda(std::mt19937& rng) {
  std::normal_distribution<double> nd;
  Eigen::Vector4cd l;
  for (int i = 0; i < 4; ++i) l[i] = Complex(nd(rng), nd(rng));
  return l;
}

// Smooth localized test field with generic angular dependence.
SpinorField random_test_field(std::mt19937& rng, double r_center) {
  std::normal_distribution<double> nd;
  Eigen::Vector4cd amp;
  Eigen::Matrix<Complex, 4, 3> lin;
  for (int i = 0; i < 4; ++i) {
    amp[i] = Complex(nd(rng), nd(rng));
    for (int j = 0; j < 3; ++j) lin(i, j) = Complex(nd(rng), nd(rng));
  }
  SpinorField f;
  f.value = [amp, lin, r_center](const Point& q) {
    const double bump = std::exp(-0.3 * (q.r - r_center) * (q.r - r_center)) *
                        (1.0 + 0.2 * std::sin(q.theta) + 0.1 * std::cos(q.psi));
    Eigen::Vector3cd x;
    x << Complex(q.r - r_center), Complex(q.theta - 1.0),
        Complex(std::sin(q.psi));
    return Spinor(amp * bump + 0.1 * (lin * x));
  };
  return f;
}

struct PipelineStatus {
  bool fail = false;
  bool not_converged = false;
  bool internal_error = false;
};

void set_status(Json& block, PipelineStatus& agg, bool pass,
                bool not_converged = false) {
  if (not_converged) {
    block["status"] = "not-converged";
    agg.not_converged = true;
  } else if (pass) {
    block["status"] = "pass";
  } else {
    block["status"] = "fail";
    agg.fail = true;
  }
}

// ---- pipelines ----

Json pipeline_clifford(const RunConfig& config, PipelineStatus& agg) {
  Json block;
  double max_defect = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b) {
      max_defect = std::max(max_defect, anticommutator_defect(a, b));
    }
  double herm = (gamma_matrix(0) - gamma_matrix(0).adjoint())
                    .cwiseAbs()
                    .maxCoeff();
  double skew = 0.0;
  for (int i = 1; i < 4; ++i) {
    skew = std::max(skew, (gamma_matrix(i) + gamma_matrix(i).adjoint())
                              .cwiseAbs()
                              .maxCoeff());
  }
  block["tolerance"] = config.tol_clifford;
  block["max_anticommutator_defect"] = max_defect;
  block["gamma0_hermiticity_defect"] = herm;
  block["max_spatial_skew_defect"] = skew;
  set_status(block, agg,
             max_defect <= config.tol_clifford &&
                 herm <= config.tol_clifford && skew <= config.tol_clifford);
  return block;
}

Json pipeline_killing(const RunConfig& config, PipelineStatus& agg) {
  Json block;
  auto background = family_ads(config.kappa);
  std::mt19937 rng(config.seed);
  double worst_e0 = 0.0, worst_imk = 0.0;
  const int n_points = 20;
  for (int s = 0; s < n_points; ++s) {
    const Point p = random_point(rng, 1.0, 3.0);
    const Eigen::Vector4cd lambda = random_lambda(rng);
    worst_e0 = std::max(
        worst_e0,
        killing_residual(*background, killing_spinor_e0(lambda, config.kappa),
                         p, ConnectionVariant::E0Killing));
    worst_imk = std::max(
        worst_imk,
        killing_residual(*background,
                         killing_spinor_imaginary(lambda, config.kappa), p,
                         ConnectionVariant::Imaginary));
  }
  // linear independence: Gram determinant of the four basis solutions
  const Point p0 = random_point(rng, 1.0, 2.0);
  Eigen::Matrix4cd basis_e0, basis_imk;
  for (int k = 0; k < 4; ++k) {
    Eigen::Vector4cd unit = Eigen::Vector4cd::Zero();
    unit[k] = 1.0;
    basis_e0.col(k) = killing_spinor_e0(unit, config.kappa).value(p0);
    basis_imk.col(k) = killing_spinor_imaginary(unit, config.kappa).value(p0);
  }
  const double det_e0 = std::abs(basis_e0.determinant());
  const double det_imk = std::abs(basis_imk.determinant());

  block["tolerance"] = config.tol_killing;
  block["points"] = n_points;
  block["max_residual_e0"] = worst_e0;
  block["max_residual_imaginary"] = worst_imk;
  block["gram_determinant_e0"] = det_e0;
  block["gram_determinant_imaginary"] = det_imk;
  set_status(block, agg,
             worst_e0 <= config.tol_killing &&
                 worst_imk <= config.tol_killing && det_e0 > 1e-8 &&
                 det_imk > 1e-8);
  return block;
}

Json pipeline_weitzenbock(const RunConfig& config,
                          const InitialDataFamily& family,
                          PipelineStatus& agg) {
  Json block;
  std::mt19937 rng(config.seed);
  const double r_lo = std::max(family.min_radius() + 0.5, 1.2);
  const double r_hi = r_lo + 1.0;
  const double h_coarse = 2e-3;
  bool pass = true;
  double worst = 0.0, worst_ratio_low = 10.0, worst_ratio_high = 0.0;
  Json cases = Json::array();
  for (int s = 0; s < 3; ++s) {
    SpinorField field = random_test_field(rng, 0.5 * (r_lo + r_hi));
    const Point p = random_point(rng, r_lo, r_hi);
    for (auto variant :
         {ConnectionVariant::E0Killing, ConnectionVariant::Imaginary}) {
      field.fd_step = h_coarse;
      const double res_coarse = weitzenbock_residual(family, field, p, variant);
      field.fd_step = h_coarse / 2.0;
      const double res_fine = weitzenbock_residual(family, field, p, variant);
      const double ratio = res_fine > 1e-14 ? res_coarse / res_fine : 4.0;
      worst = std::max(worst, res_fine);
      worst_ratio_low = std::min(worst_ratio_low, ratio);
      worst_ratio_high = std::max(worst_ratio_high, ratio);
      Json entry;
      entry["variant"] =
          variant == ConnectionVariant::E0Killing ? "e0" : "imaginary";
      entry["residual_coarse"] = res_coarse;
      entry["residual_fine"] = res_fine;
      entry["step_halving_ratio"] = ratio;
      cases.push_back(entry);
      pass = pass && res_fine <= config.tol_weitzenbock &&
             (res_fine < 1e-12 || (ratio >= 3.0 && ratio <= 5.0));
    }
  }
  block["tolerance"] = config.tol_weitzenbock;
  block["fd_step_coarse"] = h_coarse;
  block["max_residual"] = worst;
  block["ratio_range"] = Json::array({worst_ratio_low, worst_ratio_high});
  block["cases"] = cases;
  set_status(block, agg, pass);
  return block;
}

Json pipeline_decay(const RunConfig& config, const InitialDataFamily& family,
                    PipelineStatus& agg) {
  Json block;
  const DecayReport report = validate_decay(family, config.radii);
  block["tau"] = report.tau;
  block["tau_above_threshold"] = report.tau_above_threshold;
  block["radii"] = config.radii;
  Json quantities = Json::array();
  for (const DecayQuantityReport& q : report.quantities) {
    Json entry;
    entry["quantity"] = q.quantity;
    entry["weighted_sup"] = q.sup_weighted;
    entry["growth_rate"] = q.growth_rate;
    entry["bounded"] = q.bounded;
    quantities.push_back(entry);
  }
  block["quantities"] = quantities;
  set_status(block, agg, report.pass);
  return block;
}

Json pipeline_energy_conditions(const RunConfig& config,
                                const InitialDataFamily& family,
                                PipelineStatus& agg) {
  Json block;
  // Algebraic identity 2 mu = Scal + (tr h)^2 - |h|^2 + 6 k^2 - 4 k tr h
  // with mu built from p = kappa g - h, on random tensor samples.
  std::mt19937 rng(config.seed);
  std::normal_distribution<double> nd;
  double identity_defect = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const double scal = 4.0 * nd(rng);
    const double kap = std::abs(nd(rng)) + 0.2;
    Eigen::Matrix3d h;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) h(i, j) = h(j, i) = nd(rng);
    const Eigen::Matrix3d p = kap * Eigen::Matrix3d::Identity() - h;
    const double mu =
        0.5 * (scal + p.trace() * p.trace() - p.squaredNorm());
    const double closed = 0.5 * (scal + h.trace() * h.trace() -
                                 h.squaredNorm() + 6.0 * kap * kap -
                                 4.0 * kap * h.trace());
    identity_defect = std::max(identity_defect, std::abs(mu - closed));
  }

  const double r_lo = std::max(family.min_radius() + 0.5, 1.2);
  double worst_mu = 0.0, worst_current = 0.0;
  double min_margin = std::numeric_limits<double>::infinity();
  double min_margin_std = std::numeric_limits<double>::infinity();
  Json points = Json::array();
  for (int s = 0; s < 5; ++s) {
    const Point p = random_point(rng, r_lo, r_lo + 1.5);
    const ConstraintDensities cd = constraint_densities(family, p);
    worst_mu = std::max(worst_mu, std::abs(cd.mu));
    worst_current = std::max(worst_current, cd.omega_bar.norm());
    min_margin = std::min(min_margin, cd.margin);
    min_margin_std = std::min(min_margin_std, cd.margin_standard);
    Json entry;
    entry["r"] = p.r;
    entry["theta"] = p.theta;
    entry["psi"] = p.psi;
    entry["mu"] = cd.mu;
    entry["omega_bar_norm"] = cd.omega_bar.norm();
    entry["margin"] = cd.margin;
    entry["rho"] = cd.rho;
    entry["current_norm"] = cd.current.norm();
    entry["margin_standard"] = cd.margin_standard;
    points.push_back(entry);
  }
  block["identity_tolerance"] = config.tol_identity;
  block["identity_defect"] = identity_defect;
  block["vacuum_family"] = family.vacuum();
  block["max_abs_mu"] = worst_mu;
  block["max_momentum_density"] = worst_current;
  block["min_margin"] = min_margin;
  block["min_margin_standard"] = min_margin_std;
  block["points"] = points;
  bool pass = identity_defect <= config.tol_identity;
  if (family.vacuum()) {
    pass = pass && worst_mu <= config.tol_vacuum &&
           worst_current <= config.tol_vacuum;
  }
  set_status(block, agg, pass);
  return block;
}

Json pipeline_mass(const RunConfig& config, const EnergyMomentum& em,
                   PipelineStatus& agg) {
  Json block;
  block["radii"] = config.radii;
  block["fit_tolerance"] = config.extrap.tolerance;
  block["E"] = json_vector(em.E);
  Json p_rows = Json::array();
  for (int nu = 0; nu < 4; ++nu) {
    p_rows.push_back(Json::array({em.P(nu, 0), em.P(nu, 1), em.P(nu, 2)}));
  }
  block["P"] = p_rows;
  Json fits = Json::array();
  for (int nu = 0; nu < 4; ++nu) {
    const FitDiagnostics& f = em.e_fit[static_cast<std::size_t>(nu)];
    Json entry;
    entry["component"] = "E" + std::to_string(nu);
    entry["value"] = f.value;
    entry["sigma"] = f.sigma;
    entry["relative_residual"] = f.residual;
    entry["converged"] = f.converged;
    fits.push_back(entry);
  }
  block["fits"] = fits;
  block["worst_relative_residual"] = em.worst_residual;
  Json samples = Json::array();
  for (const RadiusSample& s : em.samples) {
    Json entry;
    entry["r"] = s.r;
    entry["E"] = json_vector(s.E);
    Json rows = Json::array();
    for (int nu = 0; nu < 4; ++nu) {
      rows.push_back(Json::array({s.P(nu, 0), s.P(nu, 1), s.P(nu, 2)}));
    }
    entry["P"] = rows;
    samples.push_back(entry);
  }
  block["per_radius"] = samples;
  set_status(block, agg, em.converged, !em.converged);
  return block;
}

Json pipeline_q_matrices(const RunConfig& config, const EnergyMomentum& em,
                         PipelineStatus& agg) {
  Json block;
  if (!em.converged) {
    block["reason"] = "energy-momentum extrapolation not converged";
    set_status(block, agg, false, true);
    return block;
  }
  const PositivityReport rep = positivity_report(em, config.tol_positivity);
  block["q1"] = json_hermitian(rep.q1);
  block["q2"] = json_hermitian(rep.q2);
  block["corollary_q1_margin"] = rep.corollary_q1_margin;
  block["corollary_q2_margin"] = rep.corollary_q2_margin;
  block["geometric_invariant_c1"] = geometric_invariant(em, 1.0, 0.0);

  // internal consistency: block spectrum of Q1 and the boundary form
  Eigen::Vector4d beta;
  for (int nu = 0; nu < 4; ++nu) beta[nu] = em.E[nu] + em.P(nu, 0);
  const double bnorm = beta.tail<3>().norm();
  Eigen::Vector4d expected;
  expected << beta[0] - bnorm, beta[0] - bnorm, beta[0] + bnorm,
      beta[0] + bnorm;
  const double scale = std::max(1.0, beta.cwiseAbs().maxCoeff());
  const double spectrum_defect =
      (rep.q1.eigenvalues - expected).cwiseAbs().maxCoeff();

  std::mt19937 rng(config.seed);
  double form_defect = 0.0;
  for (int s = 0; s < 20; ++s) {
    const Eigen::Vector4cd lambda = random_lambda(rng);
    const double via_form = boundary_quadratic_form(em, lambda);
    const double via_matrix =
        (lambda.adjoint() * rep.q1.matrix * lambda)(0, 0).real();
    form_defect = std::max(form_defect, std::abs(via_form - via_matrix));
  }
  block["q1_spectrum_defect"] = spectrum_defect;
  block["boundary_form_defect"] = form_defect;
  set_status(block, agg,
             spectrum_defect <= 1e-10 * scale && form_defect <= 1e-10 * scale);
  return block;
}

Json pipeline_rigidity(const RunConfig& config,
                       const InitialDataFamily& family, PipelineStatus& agg) {
  Json block;
  std::mt19937 rng(config.seed);
  const double r_lo = std::max(family.min_radius() + 0.5, 1.2);
  double e0_gauss = 0.0, e0_codazzi = 0.0, im_gauss = 0.0, im_codazzi = 0.0;
  for (int s = 0; s < 4; ++s) {
    const Point p = random_point(rng, r_lo, r_lo + 1.5);
    const RigidityResiduals e0 =
        rigidity_residuals(family, p, KillingVariant::E0Killing);
    const RigidityResiduals im =
        rigidity_residuals(family, p, KillingVariant::Imaginary);
    e0_gauss = std::max(e0_gauss, e0.gauss);
    e0_codazzi = std::max(e0_codazzi, e0.codazzi);
    im_gauss = std::max(im_gauss, im.gauss);
    im_codazzi = std::max(im_codazzi, im.codazzi);
  }
  block["tolerance"] = config.tol_rigidity;
  block["e0_gauss_residual"] = e0_gauss;
  block["e0_codazzi_residual"] = e0_codazzi;
  block["imaginary_gauss_residual"] = im_gauss;
  block["imaginary_codazzi_residual"] = im_codazzi;
  block["e0_rigid"] = e0_gauss <= config.tol_rigidity &&
                      e0_codazzi <= config.tol_rigidity;
  block["imaginary_rigid"] = im_gauss <= config.tol_rigidity &&
                             im_codazzi <= config.tol_rigidity;
  set_status(block, agg, true);
  return block;
}

}  // namespace

RunOutcome run(const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  RunOutcome outcome;
  PipelineStatus agg;

  Json& report = outcome.report;
  report["provenance"]["tool"] = "adsmass";
  report["provenance"]["version"] = kVersion;
  report["provenance"]["config_hash"] = config_hash(config);
  report["provenance"]["timestamp"] = iso_timestamp();

  std::shared_ptr<InitialDataFamily> family =
      make_family(config.family, config.family_params, config.kappa);
  report["family"]["name"] = family->name();
  report["family"]["kappa"] = family->kappa();
  report["family"]["tau"] = family->tau();
  Json params;
  for (const auto& [key, value] : family->parameters()) params[key] = value;
  report["family"]["parameters"] = std::move(params);
  report["config"] = serialize_config(config);

  auto selected = [&config](const std::string& name) {
    return std::find(config.pipelines.begin(), config.pipelines.end(), name) !=
           config.pipelines.end();
  };

  std::optional<EnergyMomentum> em;
  auto ensure_em = [&]() -> const EnergyMomentum& {
    if (!em) {
      em = energy_momentum(*family, config.radii, config.quad, config.extrap);
    }
    return *em;
  };

  Json pipelines;
  for (const std::string& name : pipeline_names()) {
    if (!selected(name)) continue;
    try {
      if (name == "clifford") {
        pipelines[name] = pipeline_clifford(config, agg);
      } else if (name == "killing") {
        pipelines[name] = pipeline_killing(config, agg);
      } else if (name == "weitzenbock") {
        pipelines[name] = pipeline_weitzenbock(config, *family, agg);
      } else if (name == "decay") {
        pipelines[name] = pipeline_decay(config, *family, agg);
      } else if (name == "energy-conditions") {
        pipelines[name] = pipeline_energy_conditions(config, *family, agg);
      } else if (name == "mass") {
        pipelines[name] = pipeline_mass(config, ensure_em(), agg);
        outcome.csv = render_csv(em->samples);
      } else if (name == "q-matrices") {
        pipelines[name] = pipeline_q_matrices(config, ensure_em(), agg);
      } else if (name == "rigidity") {
        pipelines[name] = pipeline_rigidity(config, *family, agg);
      }
    } catch (const std::exception& e) {
      Json block;
      block["status"] = "error";
      block["error"] = e.what();
      pipelines[name] = std::move(block);
      agg.internal_error = true;
    }
  }
  report["pipelines"] = std::move(pipelines);

  int exit_code = kExitPass;
  std::string status = "pass";
  if (agg.internal_error) {
    exit_code = kExitInternalError;
    status = "error";
  } else if (agg.fail) {
    exit_code = kExitVerificationFailure;
    status = "fail";
  } else if (agg.not_converged) {
    exit_code = kExitNotConverged;
    status = "not-converged";
  }
  const auto elapsed = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  report["provenance"]["elapsed_seconds"] = elapsed;
  report["summary"]["status"] = status;
  report["summary"]["exit_code"] = exit_code;
  outcome.exit_code = exit_code;
  return outcome;
}

}  // namespace adsmass
