#include "adsmass/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "adsmass/initial_data.hpp"

namespace adsmass {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Diagonal coframe factors: ering^1 = dr, ering^2 = (sinh kr / k) dtheta,
// ering^3 = (sinh kr sin th / k) dpsi.
Eigen::Vector3d coframe_diag(const Point& p, double kappa) {
  const double f = std::sinh(kappa * p.r) / kappa;
  return {1.0, f, f * std::sin(p.theta)};
}

// Coordinate partials of the coframe factors; d[c][i] = d_c D_i.
std::array<Eigen::Vector3d, 3> coframe_diag_d(const Point& p, double kappa) {
  const double ch = std::cosh(kappa * p.r);
  const double f = std::sinh(kappa * p.r) / kappa;
  const double st = std::sin(p.theta), ct = std::cos(p.theta);
  std::array<Eigen::Vector3d, 3> d{};
  d[0] = {0.0, ch, ch * st};
  d[1] = {0.0, 0.0, f * ct};
  d[2] = {0.0, 0.0, 0.0};
  return d;
}

std::array<std::array<Eigen::Vector3d, 3>, 3> coframe_diag_dd(const Point& p,
                                                              double kappa) {
  const double sh = std::sinh(kappa * p.r);
  const double ch = std::cosh(kappa * p.r);
  const double f = sh / kappa;
  const double st = std::sin(p.theta), ct = std::cos(p.theta);
  std::array<std::array<Eigen::Vector3d, 3>, 3> dd{};
  for (auto& row : dd)
    for (auto& v : row) v = Eigen::Vector3d::Zero();
  dd[0][0] = {0.0, kappa * sh, kappa * sh * st};
  dd[0][1] = {0.0, 0.0, ch * ct};
  dd[1][0] = dd[0][1];
  dd[1][1] = {0.0, 0.0, -f * st};
  return dd;
}

Eigen::Matrix3d sandwich(const Eigen::Vector3d& d, const Eigen::Matrix3d& m) {
  return d.asDiagonal() * m * d.asDiagonal();
}

// Derivative of the symmetric square root: solves X Y + Y X = dG for
// Y = G^{1/2} in the eigenbasis of G.
Eigen::Matrix3d sqrt_derivative(const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>& es,
                                const Eigen::Matrix3d& dG) {
  const Eigen::Matrix3d& U = es.eigenvectors();
  Eigen::Vector3d s = es.eigenvalues().cwiseSqrt();
  Eigen::Matrix3d rhs = U.transpose() * dG * U;
  Eigen::Matrix3d X;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) X(i, j) = rhs(i, j) / (s[i] + s[j]);
  return U * X * U.transpose();
}

struct MetricJet {
  Eigen::Matrix3d g;
  Eigen::Matrix3d ginv;
  std::array<Eigen::Matrix3d, 3> dg;
  std::array<std::array<Eigen::Matrix3d, 3>, 3> ddg;
};

MetricJet metric_jet(const InitialDataFamily& data, const Point& p,
                     bool second_order) {
  data.require_valid(p);
  const double kappa = data.kappa();
  const Eigen::Vector3d D = coframe_diag(p, kappa);
  const auto dD = coframe_diag_d(p, kappa);
  const Eigen::Matrix3d G = Eigen::Matrix3d::Identity() + data.a(p);
  if (G.determinant() <= 0.0) {
    throw std::domain_error("degenerate metric: det(I + a) <= 0 at sample point");
  }
  const auto dG = data.da(p);

  MetricJet jet;
  jet.g = sandwich(D, G);
  jet.ginv = jet.g.inverse();
  for (int c = 0; c < 3; ++c) {
    jet.dg[c] = sandwich(D, dG[c]) + dD[c].asDiagonal() * G * D.asDiagonal() +
                D.asDiagonal() * G * dD[c].asDiagonal();
  }
  if (second_order) {
    const auto ddD = coframe_diag_dd(p, kappa);
    const auto ddG = data.dda(p);
    for (int c = 0; c < 3; ++c) {
      for (int e = 0; e < 3; ++e) {
        Eigen::Matrix3d t = sandwich(D, ddG[c][e]);
        t += dD[e].asDiagonal() * dG[c] * D.asDiagonal() +
             D.asDiagonal() * dG[c] * dD[e].asDiagonal();
        t += dD[c].asDiagonal() * dG[e] * D.asDiagonal() +
             D.asDiagonal() * dG[e] * dD[c].asDiagonal();
        t += ddD[c][e].asDiagonal() * G * D.asDiagonal() +
             D.asDiagonal() * G * ddD[c][e].asDiagonal();
        t += dD[c].asDiagonal() * G * dD[e].asDiagonal() +
             dD[e].asDiagonal() * G * dD[c].asDiagonal();
        jet.ddg[c][e] = t;
      }
    }
  }
  return jet;
}

std::array<Eigen::Matrix3d, 3> christoffel_from_jet(const MetricJet& jet) {
  std::array<Eigen::Matrix3d, 3> gam;  // gam[a](b,c) = Gamma^a_{bc}
  for (auto& m : gam) m.setZero();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        double s = 0.0;
        for (int d = 0; d < 3; ++d)
          s += jet.ginv(a, d) *
               (jet.dg[b](d, c) + jet.dg[c](b, d) - jet.dg[d](b, c));
        gam[a](b, c) = 0.5 * s;
      }
  return gam;
}

}  // namespace

double CurvatureTensor::max_abs() const {
  double m = 0.0;
  for (double v : comp) m = std::max(m, std::abs(v));
  return m;
}

double CurvatureTensor::symmetry_defect() const {
  const CurvatureTensor& R = *this;
  double d = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          d = std::max(d, std::abs(R(i, j, k, l) + R(j, i, k, l)));
          d = std::max(d, std::abs(R(i, j, k, l) + R(i, j, l, k)));
          d = std::max(d, std::abs(R(i, j, k, l) - R(k, l, i, j)));
          d = std::max(d, std::abs(R(i, j, k, l) + R(j, k, i, l) +
                                   R(k, i, j, l)));
        }
  return d;
}

double CurvatureTensor::scalar() const {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += (*this)(i, j, i, j);
  return s;
}

void check_point(const Point& p) {
  if (!(p.r > 0.0)) throw std::domain_error("point: r must be positive");
  if (!(p.theta > 0.0 && p.theta < kPi)) {
    throw std::domain_error("point: theta must lie strictly inside (0, pi)");
  }
}

FrameTable hyperbolic_frame(const Point& p, double kappa) {
  check_point(p);
  const Eigen::Vector3d D = coframe_diag(p, kappa);
  FrameTable t;
  t.coframe = D.asDiagonal();
  t.frame = D.cwiseInverse().asDiagonal();
  return t;
}

ConnectionCoefficients hyperbolic_connection(const Point& p, double kappa) {
  check_point(p);
  const double c = kappa / std::tanh(kappa * p.r);
  const double d = kappa / (std::tan(p.theta) * std::sinh(kappa * p.r));
  ConnectionCoefficients w;
  for (auto& m : w) m.setZero();
  w[1](0, 1) = c;
  w[1](1, 0) = -c;
  w[2](0, 2) = c;
  w[2](2, 0) = -c;
  w[2](1, 2) = d;
  w[2](2, 1) = -d;
  return w;
}

Eigen::Matrix3d frame_directional(const std::array<Eigen::Matrix3d, 3>& dcoord,
                                  int k, const Point& p, double kappa) {
  const Eigen::Vector3d D = coframe_diag(p, kappa);
  return dcoord[static_cast<std::size_t>(k)] / D[k];
}

std::array<Eigen::Matrix3d, 3> ring_covariant_derivative(
    const Eigen::Matrix3d& t, const std::array<Eigen::Matrix3d, 3>& frame_deriv,
    const Point& p, double kappa) {
  const ConnectionCoefficients w = hyperbolic_connection(p, kappa);
  std::array<Eigen::Matrix3d, 3> out;
  for (int k = 0; k < 3; ++k) {
    // (nab_k t)_ij = e_k(t_ij) - w[k](i,m) t_mj - w[k](j,m) t_im
    out[k] = frame_deriv[k] - w[k] * t - t * w[k].transpose();
  }
  return out;
}

Eigen::Matrix3d metric_coord(const InitialDataFamily& data, const Point& p) {
  return metric_jet(data, p, false).g;
}

OrthonormalFrame orthonormal_frame(const InitialDataFamily& data,
                                   const Point& p) {
  data.require_valid(p);
  const double kappa = data.kappa();
  const Eigen::Matrix3d G = Eigen::Matrix3d::Identity() + data.a(p);
  if (G.determinant() <= 0.0) {
    throw std::domain_error("degenerate metric: det(I + a) <= 0 at sample point");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(G);
  const Eigen::Matrix3d& U = es.eigenvectors();
  Eigen::Vector3d s = es.eigenvalues();
  Eigen::Matrix3d sqrtG = U * s.cwiseSqrt().asDiagonal() * U.transpose();
  OrthonormalFrame fr;
  fr.S = U * s.cwiseSqrt().cwiseInverse().asDiagonal() * U.transpose();
  const auto dG = data.da(p);
  for (int c = 0; c < 3; ++c) {
    Eigen::Matrix3d dsqrt = sqrt_derivative(es, dG[c]);
    fr.dS[c] = -fr.S * dsqrt * fr.S;
  }
  const Eigen::Vector3d D = coframe_diag(p, kappa);
  fr.E = fr.S * Eigen::Matrix3d(D.cwiseInverse().asDiagonal());
  return fr;
}

std::array<Eigen::Matrix3d, 3> christoffel(const InitialDataFamily& data,
                                           const Point& p) {
  return christoffel_from_jet(metric_jet(data, p, false));
}

ConnectionCoefficients frame_connection(const InitialDataFamily& data,
                                        const Point& p) {
  const double kappa = data.kappa();
  const MetricJet jet = metric_jet(data, p, false);
  const auto gam = christoffel_from_jet(jet);
  const OrthonormalFrame fr = orthonormal_frame(data, p);

  // Coordinate partials of the frame rows E_k^a.
  const Eigen::Vector3d D = coframe_diag(p, kappa);
  const auto dD = coframe_diag_d(p, kappa);
  std::array<Eigen::Matrix3d, 3> dE;
  for (int c = 0; c < 3; ++c) {
    Eigen::Matrix3d dDinv = Eigen::Matrix3d::Zero();
    for (int i = 0; i < 3; ++i) dDinv(i, i) = -dD[c][i] / (D[i] * D[i]);
    dE[c] = fr.dS[c] * Eigen::Matrix3d(D.cwiseInverse().asDiagonal()) +
            fr.S * dDinv;
  }

  ConnectionCoefficients w;
  for (auto& m : w) m.setZero();
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l) {
        double s = 0.0;
        for (int c = 0; c < 3; ++c) {
          double covc = 0.0;  // (nabla_{e_j} e_k)^a contracted with e_l g
          // assemble (d_c E_k^a + Gamma^a_{cd} E_k^d) first
          for (int a2 = 0; a2 < 3; ++a2) {
            double term = dE[c](k, a2);
            for (int d2 = 0; d2 < 3; ++d2)
              term += gam[a2](c, d2) * fr.E(k, d2);
            double gl = 0.0;
            for (int b2 = 0; b2 < 3; ++b2) gl += jet.g(a2, b2) * fr.E(l, b2);
            covc += term * gl;
          }
          s += fr.E(j, c) * covc;
        }
        w[j](k, l) = s;
      }
  return w;
}

CurvatureTensor riemann(const InitialDataFamily& data, const Point& p) {
  const MetricJet jet = metric_jet(data, p, true);
  const auto gam = christoffel_from_jet(jet);

  // Coordinate partials of the Christoffels.
  std::array<Eigen::Matrix3d, 3> dginv;
  for (int e = 0; e < 3; ++e) dginv[e] = -jet.ginv * jet.dg[e] * jet.ginv;
  // dgam[e][a](b,c) = d_e Gamma^a_{bc}
  std::array<std::array<Eigen::Matrix3d, 3>, 3> dgam;
  for (int e = 0; e < 3; ++e)
    for (int a = 0; a < 3; ++a) {
      dgam[e][a].setZero();
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          double s = 0.0;
          for (int d = 0; d < 3; ++d) {
            s += dginv[e](a, d) *
                 (jet.dg[b](d, c) + jet.dg[c](b, d) - jet.dg[d](b, c));
            s += jet.ginv(a, d) * (jet.ddg[b][e](d, c) + jet.ddg[c][e](b, d) -
                                   jet.ddg[d][e](b, c));
          }
          dgam[e][a](b, c) = 0.5 * s;
        }
    }

  // R^a_{bcd} = d_c Gamma^a_{db} - d_d Gamma^a_{cb}
  //             + Gamma^a_{ce} Gamma^e_{db} - Gamma^a_{de} Gamma^e_{cb}
  double Rl[3][3][3][3];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          double s = dgam[c][a](d, b) - dgam[d][a](c, b);
          for (int e = 0; e < 3; ++e)
            s += gam[a](c, e) * gam[e](d, b) - gam[a](d, e) * gam[e](c, b);
          Rl[a][b][c][d] = s;
        }
  // Lower the first index.
  double Rlow[3][3][3][3];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          double s = 0.0;
          for (int e = 0; e < 3; ++e) s += jet.g(a, e) * Rl[e][b][c][d];
          Rlow[a][b][c][d] = s;
        }

  const OrthonormalFrame fr = orthonormal_frame(data, p);
  CurvatureTensor R;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          double s = 0.0;
          for (int c = 0; c < 3; ++c)
            for (int d = 0; d < 3; ++d)
              for (int b = 0; b < 3; ++b)
                for (int a = 0; a < 3; ++a)
                  s += fr.E(i, c) * fr.E(j, d) * fr.E(k, b) * fr.E(l, a) *
                       Rlow[a][b][c][d];
          // Overall sign fixed so the hyperbolic background has
          // R_ijij = -kappa^2 (sectional curvature convention).
          R.at(i, j, k, l) = -s;
        }
  return R;
}

double scalar_curvature(const InitialDataFamily& data, const Point& p) {
  return riemann(data, p).scalar();
}

Eigen::Matrix3d h_orthonormal(const InitialDataFamily& data, const Point& p) {
  const OrthonormalFrame fr = orthonormal_frame(data, p);
  return fr.S * data.h(p) * fr.S;
}

HDerivatives covariant_derivative_h(const InitialDataFamily& data,
                                    const Point& p) {
  const double kappa = data.kappa();
  const MetricJet jet = metric_jet(data, p, false);
  const auto gam = christoffel_from_jet(jet);
  const OrthonormalFrame fr = orthonormal_frame(data, p);

  const Eigen::Vector3d D = coframe_diag(p, kappa);
  const auto dD = coframe_diag_d(p, kappa);
  const Eigen::Matrix3d hf = data.h(p);
  const auto dhf = data.dh(p);

  // Coordinate components h_ab and partials.
  const Eigen::Matrix3d hc = sandwich(D, hf);
  std::array<Eigen::Matrix3d, 3> dhc;
  for (int c = 0; c < 3; ++c) {
    dhc[c] = sandwich(D, dhf[c]) + dD[c].asDiagonal() * hf * D.asDiagonal() +
             D.asDiagonal() * hf * dD[c].asDiagonal();
  }
  // nabla_c h_ab = d_c h_ab - Gamma^d_{ca} h_db - Gamma^d_{cb} h_ad
  std::array<Eigen::Matrix3d, 3> covh;
  for (int c = 0; c < 3; ++c) {
    covh[c] = dhc[c];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int d = 0; d < 3; ++d)
          covh[c](a, b) -=
              gam[d](c, a) * hc(d, b) + gam[d](c, b) * hc(a, d);
  }

  HDerivatives out;
  for (int k = 0; k < 3; ++k) {
    out.grad[k].setZero();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int c = 0; c < 3; ++c)
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
              s += fr.E(k, c) * fr.E(i, a) * fr.E(j, b) * covh[c](a, b);
        out.grad[k](i, j) = s;
      }
  }
  for (int i = 0; i < 3; ++i) {
    double div = 0.0, gt = 0.0;
    for (int j = 0; j < 3; ++j) {
      div += out.grad[j](j, i);
      gt += out.grad[i](j, j);
    }
    out.divergence[i] = div;
    out.grad_trace[i] = gt;
  }
  return out;
}

}  // namespace adsmass
