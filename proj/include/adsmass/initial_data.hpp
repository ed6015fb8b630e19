#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "adsmass/geometry.hpp"

// Built-in asymptotically AdS initial data families (g = gring + a, second
// fundamental form h), sampled decay validation, constraint densities and the
// rigidity residuals of the two positive mass theorems.

namespace adsmass {

class InitialDataFamily {
 public:
  InitialDataFamily(std::string name, double kappa, double tau);
  virtual ~InitialDataFamily() = default;

  const std::string& name() const { return name_; }
  double kappa() const { return kappa_; }
  double tau() const { return tau_; }

  // Frame components a_ij = a(ering_i, ering_j), h_ij = h(ering_i, ering_j).
  virtual Eigen::Matrix3d a(const Point& p) const = 0;
  virtual Eigen::Matrix3d h(const Point& p) const = 0;

  // Coordinate partials with respect to (r, theta, psi). Defaults are centered
  // second-order finite differences with step 1e-4 max(1,r) radially and 1e-4
  // in the angles.
  virtual std::array<Eigen::Matrix3d, 3> da(const Point& p) const;
  virtual std::array<std::array<Eigen::Matrix3d, 3>, 3> dda(
      const Point& p) const;
  virtual std::array<Eigen::Matrix3d, 3> dh(const Point& p) const;

  virtual bool analytic_derivatives() const { return false; }
  virtual bool vacuum() const { return false; }
  // Chart validity bound: points with r <= min_radius() are rejected.
  virtual double min_radius() const { return 0.0; }
  virtual std::map<std::string, double> parameters() const { return {}; }

  // Throws std::domain_error outside the valid chart.
  void require_valid(const Point& p) const;

 private:
  std::string name_;
  double kappa_;
  double tau_;
};

std::shared_ptr<InitialDataFamily> family_ads(double kappa);

// t-slice of the Schwarzschild-AdS (Kottler) metric in the geodesic
// hyperboloidal chart, anchored to the AdS chart at infinity. Vacuum, h = 0,
// decay rate tau = 3; hyperbolic mass equals the mass parameter m.
std::shared_ptr<InitialDataFamily> family_kottler(double m, double kappa);

enum class HProfile { None, Isotropic, H11Only, Anisotropic };

struct PerturbationSpec {
  double eps = 0.01;       // amplitude of a
  double tau = 3.0;        // declared decay rate (> 3/2)
  int angular_mode = 1;    // psi mode number of the angular factor
  double h_eps = 0.0;      // amplitude of h
  HProfile h_profile = HProfile::None;
  // Fixture hook: when > 0, a actually decays like e^{-tau_actual kappa r}
  // while tau above stays the declared rate (used to exercise the decay gate).
  double tau_actual = 0.0;
};

std::shared_ptr<InitialDataFamily> family_perturbation(
    const PerturbationSpec& spec, double kappa);

// Family registry for the CLI: name -> factory over a parameter map.
struct FamilyDescriptor {
  std::string name;
  std::vector<std::string> parameter_names;
  std::function<std::shared_ptr<InitialDataFamily>(
      const std::map<std::string, double>&, double kappa)>
      make;
};
const std::vector<FamilyDescriptor>& family_registry();
std::shared_ptr<InitialDataFamily> make_family(
    const std::string& name, const std::map<std::string, double>& params,
    double kappa);

// -------- decay validation --------

struct DecayQuantityReport {
  std::string quantity;             // "a", "da", "dda", "h", "dh"
  std::vector<double> sup_weighted; // per radius, sup |.| e^{tau kappa r}
  double growth_rate;               // fitted slope of log sup vs kappa r
  bool bounded;
};

struct DecayReport {
  double tau;
  bool tau_above_threshold;  // tau > 3/2
  std::vector<double> radii;
  std::vector<DecayQuantityReport> quantities;
  bool pass;
};

DecayReport validate_decay(const InitialDataFamily& data,
                           const std::vector<double>& radii, int n_theta = 32,
                           int n_psi = 64);

// -------- constraint densities --------

struct ConstraintDensities {
  double mu;                 // energy density of the kappa-generalized pair
  Eigen::Vector3d omega_bar; // momentum density, g-orthonormal frame
  double margin;             // mu - |omega_bar|
  double rho;                // standard-DEC energy density (with 3 kappa^2 shift)
  Eigen::Vector3d current;   // standard-DEC momentum density
  double margin_standard;    // rho - |current|
};

ConstraintDensities constraint_densities(const InitialDataFamily& data,
                                         const Point& p);

// -------- rigidity residuals --------

enum class KillingVariant { E0Killing, Imaginary };

struct RigidityResiduals {
  double gauss;    // max |R_ijkl + (variant-specific quadratic h terms)|
  double codazzi;  // max |nabbar_i h~_jk - nabbar_j h~_ik|
};

RigidityResiduals rigidity_residuals(const InitialDataFamily& data,
                                     const Point& p, KillingVariant variant);

}  // namespace adsmass
