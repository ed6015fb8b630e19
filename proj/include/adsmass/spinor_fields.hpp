#pragma once

#include <functional>

#include "adsmass/clifford.hpp"
#include "adsmass/geometry.hpp"
#include "adsmass/initial_data.hpp"

// Spinor fields over an initial data set, the two Killing-type connections
// (e0-Killing and imaginary-Killing), the associated Dirac-Witten operators
// and the Weitzenbock identity they satisfy. Spinor components refer to the
// g-orthonormal frame e_i and the fixed Clifford representation.

namespace adsmass {

struct SpinorField {
  std::function<Spinor(const Point&)> value;
  // Optional analytic coordinate partials (d/dr, d/dtheta, d/dpsi); when
  // absent, centered finite differences with step fd_step are used. Operators
  // that build derived fields (Dirac images, nabla-hat sections) propagate
  // fd_step, so the overall discretization error is O(fd_step^2).
  std::function<std::array<Spinor, 3>(const Point&)> dcoord;
  double fd_step = 1e-4;

  std::array<Spinor, 3> partials(const Point& p) const;
  bool analytic() const { return static_cast<bool>(dcoord); }
};

// lambda = (lambda1..lambda4) constants of the Killing families. The time
// dependence of the e0-Killing lapse-shift pair rotates them with frequency
// kappa/2.
Eigen::Vector4cd lambda_at_time(const Eigen::Vector4cd& lambda0, double t,
                                double kappa);

// Basis of imaginary e0-Killing spinors of the hyperbolic background:
// solutions of nabbar_j Phi + (kappa/2) gamma_0 gamma_j Phi = 0.
SpinorField killing_spinor_e0(const Eigen::Vector4cd& lambda, double kappa);

// Basis of imaginary Killing spinors: nabbar_j Psi + (kappa i / 2) gamma_j
// Psi = 0.
SpinorField killing_spinor_imaginary(const Eigen::Vector4cd& lambda,
                                     double kappa);

enum class ConnectionVariant { E0Killing, Imaginary };

// Levi-Civita spin derivative of g along e_j:
// nabbar_j = e_j(.) + (1/4) sum_{k,l} w_j(k,l) gamma_k gamma_l.
Spinor spin_derivative(const InitialDataFamily& data, const SpinorField& field,
                       int j, const Point& p);

// Hypersurface spacetime connection: nabla_i = nabbar_i - (1/2) h_ij
// gamma_0 gamma_j.
Spinor hypersurface_nabla(const InitialDataFamily& data,
                          const SpinorField& field, int i, const Point& p);

// Zeroth-order part of nabla-hat_i minus nabbar_i (Hermitian for both
// variants): -(1/2) h_ij gamma_0 gamma_j + Killing term
// (kappa/2) gamma_0 gamma_i  or  (kappa i / 2) gamma_i.
SpinorMatrix killing_connection_matrix(const InitialDataFamily& data,
                                       const Point& p, int i,
                                       ConnectionVariant variant);

Spinor nabla_hat(const InitialDataFamily& data, const SpinorField& field,
                 int i, const Point& p, ConnectionVariant variant);

// Dirac-Witten operator D = sum_i gamma_i nabla_i.
Spinor dirac_witten(const InitialDataFamily& data, const SpinorField& field,
                    const Point& p);

// Killing-shifted operator: D-hat = D + (3 kappa / 2) gamma_0 (e0 variant,
// formally self-adjoint) or D - (3 kappa i / 2) (imaginary variant, with
// formal adjoint D + (3 kappa i / 2)).
Spinor dirac_hat(const InitialDataFamily& data, const SpinorField& field,
                 const Point& p, ConnectionVariant variant);
Spinor dirac_hat_star(const InitialDataFamily& data, const SpinorField& field,
                      const Point& p, ConnectionVariant variant);

// Rough Laplacian nabla-hat-star nabla-hat at p.
Spinor rough_laplacian(const InitialDataFamily& data, const SpinorField& field,
                       const Point& p, ConnectionVariant variant);

// Curvature endomorphism R-hat of the Weitzenbock identity
// D-hat-star D-hat = nabla-hat-star nabla-hat + R-hat:
// (1/4)[(Scal + (tr h)^2 - |h|^2 + 6 kappa^2 - 4 kappa tr h (e0 only)) I
//       - 2 (nabbar^j h_ij - nabbar_i tr h) gamma_0 gamma_i].
SpinorMatrix curvature_endomorphism(const InitialDataFamily& data,
                                    const Point& p, ConnectionVariant variant);

// Max-abs component of D-hat-star D-hat phi - rough Laplacian - R-hat phi.
double weitzenbock_residual(const InitialDataFamily& data,
                            const SpinorField& field, const Point& p,
                            ConnectionVariant variant);

// Sup over i of |nabla-hat_i field| at p: zero for the matching Killing
// family on the exact hyperbolic background.
double killing_residual(const InitialDataFamily& data, const SpinorField& field,
                        const Point& p, ConnectionVariant variant);

}  // namespace adsmass
