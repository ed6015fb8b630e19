#include "adsmass/clifford.hpp"

#include <stdexcept>

namespace adsmass {

namespace {

SpinorMatrix make_gamma(int alpha) {
  const Complex I(0.0, 1.0);
  SpinorMatrix m = SpinorMatrix::Zero();
  switch (alpha) {
    case 0:
      m(0, 2) = 1; m(1, 3) = 1; m(2, 0) = 1; m(3, 1) = 1;
      break;
    case 1:
      m(0, 2) = -1; m(1, 3) = 1; m(2, 0) = 1; m(3, 1) = -1;
      break;
    case 2:
      m(0, 3) = 1; m(1, 2) = 1; m(2, 1) = -1; m(3, 0) = -1;
      break;
    case 3:
      m(0, 3) = I; m(1, 2) = -I; m(2, 1) = -I; m(3, 0) = I;
      break;
    default:
      throw std::domain_error("gamma: frame index must be in {0,1,2,3}");
  }
  return m;
}

}  // namespace

const CliffordElement& gamma(int alpha) {
  if (alpha < 0 || alpha > 3) {
    throw std::domain_error("gamma: frame index must be in {0,1,2,3}");
  }
  static const std::array<CliffordElement, 4> table = {
      CliffordElement{make_gamma(0), 0}, CliffordElement{make_gamma(1), 1},
      CliffordElement{make_gamma(2), 2}, CliffordElement{make_gamma(3), 3}};
  return table[static_cast<std::size_t>(alpha)];
}

const SpinorMatrix& gamma_matrix(int alpha) { return gamma(alpha).matrix; }

Spinor clifford_apply(const Eigen::Vector4d& xi, const Spinor& phi) {
  Spinor out = Spinor::Zero();
  for (int a = 0; a < 4; ++a) {
    if (xi[a] != 0.0) out += xi[a] * (gamma_matrix(a) * phi);
  }
  return out;
}

Complex inner_pos(const Spinor& phi, const Spinor& psi) {
  return phi.dot(psi);  // Eigen::dot conjugates the first argument
}

Complex inner_lorentz(const Spinor& phi, const Spinor& psi) {
  return inner_pos(gamma_matrix(0) * phi, psi);
}

double anticommutator_defect(int alpha, int beta) {
  static const Eigen::Vector4d eta(-1.0, 1.0, 1.0, 1.0);
  const SpinorMatrix& ga = gamma_matrix(alpha);
  const SpinorMatrix& gb = gamma_matrix(beta);
  SpinorMatrix defect = ga * gb + gb * ga;
  if (alpha == beta) defect += 2.0 * eta[alpha] * SpinorMatrix::Identity();
  return defect.cwiseAbs().maxCoeff();
}

}  // namespace adsmass
