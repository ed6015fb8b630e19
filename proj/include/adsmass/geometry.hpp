#pragma once

#include <Eigen/Dense>
#include <array>

// Hyperbolic background geometry in the hyperboloidal polar chart (r, theta,
// psi), and a curvature engine for metrics g = gring + a given through their
// frame components a_ij = a(ering_i, ering_j).

namespace adsmass {

class InitialDataFamily;

struct Point {
  double r;
  double theta;
  double psi;
};

// Symmetric 3x3 frame components; a_ij dimensionless, h_ij inverse length.
using FrameTensor2 = Eigen::Matrix3d;

struct FrameTable {
  // Row i holds the (d/dr, d/dtheta, d/dpsi) coefficients of ering_i.
  Eigen::Matrix3d frame;
  // Row i holds the (dr, dtheta, dpsi) coefficients of ering^i.
  Eigen::Matrix3d coframe;
};

// Connection coefficients in an orthonormal frame: w[j](k,l) = <nabla_{e_j}
// e_k, e_l>, antisymmetric in (k,l).
using ConnectionCoefficients = std::array<Eigen::Matrix3d, 3>;

struct CurvatureTensor {
  // Frame components R_ijkl = <R(e_i,e_j)e_k, e_l>, convention
  // R(X,Y)Z = nab_X nab_Y Z - nab_Y nab_X Z - nab_[X,Y] Z, so that the
  // hyperbolic background has R_ijij = -kappa^2.
  std::array<double, 81> comp{};

  double& at(int i, int j, int k, int l) {
    return comp[static_cast<std::size_t>(((i * 3 + j) * 3 + k) * 3 + l)];
  }
  double operator()(int i, int j, int k, int l) const {
    return comp[static_cast<std::size_t>(((i * 3 + j) * 3 + k) * 3 + l)];
  }
  double max_abs() const;
  // Worst violation of the algebraic symmetries and the first Bianchi
  // identity, absolute.
  double symmetry_defect() const;
  double scalar() const;  // double trace sum_ij R_ijij
};

// Orthonormal frame for g: e_i = S_i^k ering_k with S = (I + a)^{-1/2}
// (symmetric square root, matching the e_i = ering_i - a_ik ering_k / 2
// asymptotic gauge).
struct OrthonormalFrame {
  Eigen::Matrix3d S;
  std::array<Eigen::Matrix3d, 3> dS;  // coordinate partials of S
  Eigen::Matrix3d E;                  // row i: coordinate components of e_i
};

void check_point(const Point& p);  // r > 0, theta strictly inside (0, pi)

FrameTable hyperbolic_frame(const Point& p, double kappa);

ConnectionCoefficients hyperbolic_connection(const Point& p, double kappa);

// Directional derivative along ering_k from coordinate partials.
Eigen::Matrix3d frame_directional(const std::array<Eigen::Matrix3d, 3>& dcoord,
                                  int k, const Point& p, double kappa);

// Background covariant derivative of a symmetric frame 2-tensor:
// (nabring_k t)_ij given t and its frame-directional derivatives.
std::array<Eigen::Matrix3d, 3> ring_covariant_derivative(
    const Eigen::Matrix3d& t, const std::array<Eigen::Matrix3d, 3>& frame_deriv,
    const Point& p, double kappa);

// Coordinate components of g and their partials (assembled from the family's
// frame data and the analytic coframe).
Eigen::Matrix3d metric_coord(const InitialDataFamily& data, const Point& p);

OrthonormalFrame orthonormal_frame(const InitialDataFamily& data,
                                   const Point& p);

// Christoffel symbols Gamma^a_{bc} of g in the (r,theta,psi) chart.
std::array<Eigen::Matrix3d, 3> christoffel(const InitialDataFamily& data,
                                           const Point& p);

// Connection coefficients of g in the orthonormal frame e_i.
ConnectionCoefficients frame_connection(const InitialDataFamily& data,
                                        const Point& p);

CurvatureTensor riemann(const InitialDataFamily& data, const Point& p);

double scalar_curvature(const InitialDataFamily& data, const Point& p);

struct HDerivatives {
  // grad[k](i,j) = (nabbar_k h)_{ij} in the g-orthonormal frame.
  std::array<Eigen::Matrix3d, 3> grad;
  Eigen::Vector3d divergence;  // nabbar^j h_ij
  Eigen::Vector3d grad_trace;  // nabbar_i tr_g h
};

HDerivatives covariant_derivative_h(const InitialDataFamily& data,
                                    const Point& p);

// h in the g-orthonormal frame: h(e_i, e_j) = (S hring S)_ij.
Eigen::Matrix3d h_orthonormal(const InitialDataFamily& data, const Point& p);

}  // namespace adsmass
