#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

// Fixed Clifford representation on C^4 for the frame {e0, e1, e2, e3} of
// signature (-1,1,1,1): gamma0^2 = +I, gammai^2 = -I, mutually anticommuting.
// Spinors are plain 4-component complex column vectors in this basis.

namespace adsmass {

using Complex = std::complex<double>;
using Spinor = Eigen::Vector4cd;
using SpinorMatrix = Eigen::Matrix4cd;

struct CliffordElement {
  SpinorMatrix matrix;
  int label;  // frame index 0..3 for generators, -1 for products
};

/// Generator gamma_alpha of the fixed representation. Throws std::domain_error
/// for alpha outside {0,1,2,3}.
const CliffordElement& gamma(int alpha);

/// Convenience access to the raw 4x4 matrix of gamma_alpha.
const SpinorMatrix& gamma_matrix(int alpha);

/// Clifford action of the frame vector X = xi^alpha e_alpha on a spinor:
/// (sum_alpha xi^alpha gamma_alpha) phi.
Spinor clifford_apply(const Eigen::Vector4d& xi, const Spinor& phi);

/// Positive definite metric <phi,psi>: standard Hermitian product of C^4,
/// conjugate-linear in the first slot. gamma_i are skew-Hermitian and gamma_0
/// is Hermitian with respect to it.
Complex inner_pos(const Spinor& phi, const Spinor& psi);

/// Indefinite Hermitian pairing (phi,psi) = <gamma_0 phi, psi>.
Complex inner_lorentz(const Spinor& phi, const Spinor& psi);

/// Max-norm of the anticommutator defect {gamma_a, gamma_b} + 2 eta_ab I.
/// Zero (exactly, in double arithmetic) for the fixed representation.
double anticommutator_defect(int alpha, int beta);

}  // namespace adsmass
