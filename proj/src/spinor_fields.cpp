#include "adsmass/spinor_fields.hpp"

#include <cmath>

namespace adsmass {

namespace {

const Complex kI(0.0, 1.0);

struct AngularBlock {
  Complex value, dtheta, dpsi;
};

// u(theta,psi) = la e^{i psi/2} sin(theta/2) + lb e^{-i psi/2} cos(theta/2)
AngularBlock block_a(Complex la, Complex lb, double theta, double psi) {
  const Complex ep = std::exp(kI * (psi / 2.0));
  const Complex em = std::exp(-kI * (psi / 2.0));
  const double s = std::sin(theta / 2.0), c = std::cos(theta / 2.0);
  AngularBlock b;
  b.value = la * ep * s + lb * em * c;
  b.dtheta = 0.5 * (la * ep * c - lb * em * s);
  b.dpsi = 0.5 * kI * (la * ep * s - lb * em * c);
  return b;
}

// v(theta,psi) = la e^{-i psi/2} sin(theta/2) - lb e^{i psi/2} cos(theta/2)
AngularBlock block_b(Complex la, Complex lb, double theta, double psi) {
  const Complex ep = std::exp(kI * (psi / 2.0));
  const Complex em = std::exp(-kI * (psi / 2.0));
  const double s = std::sin(theta / 2.0), c = std::cos(theta / 2.0);
  AngularBlock b;
  b.value = la * em * s - lb * ep * c;
  b.dtheta = 0.5 * (la * em * c + lb * ep * s);
  b.dpsi = -0.5 * kI * (la * em * s + lb * ep * c);
  return b;
}

}  // namespace

std::array<Spinor, 3> SpinorField::partials(const Point& p) const {
  if (dcoord) return dcoord(p);
  std::array<Spinor, 3> out;
  for (int c = 0; c < 3; ++c) {
    Point pp = p, pm = p;
    (c == 0 ? pp.r : c == 1 ? pp.theta : pp.psi) += fd_step;
    (c == 0 ? pm.r : c == 1 ? pm.theta : pm.psi) -= fd_step;
    out[c] = (value(pp) - value(pm)) / (2.0 * fd_step);
  }
  return out;
}

Eigen::Vector4cd lambda_at_time(const Eigen::Vector4cd& lambda0, double t,
                                double kappa) {
  const double c = std::cos(kappa * t / 2.0), s = std::sin(kappa * t / 2.0);
  Eigen::Vector4cd l;
  l[0] = lambda0[0] * c + lambda0[2] * s;
  l[2] = lambda0[2] * c - lambda0[0] * s;
  l[1] = lambda0[1] * c + lambda0[3] * s;
  l[3] = lambda0[3] * c - lambda0[1] * s;
  return l;
}

SpinorField killing_spinor_e0(const Eigen::Vector4cd& lambda, double kappa) {
  auto eval = [lambda, kappa](const Point& p, bool want_d, Spinor& v,
                              std::array<Spinor, 3>& d) {
    const Complex l1 = lambda[0], l2 = lambda[1], l3 = lambda[2],
                  l4 = lambda[3];
    const AngularBlock u12 = block_a(l1, l2, p.theta, p.psi);
    const AngularBlock u34 = block_a(l3, l4, p.theta, p.psi);
    const AngularBlock v21 = block_b(l2, l1, p.theta, p.psi);
    const AngularBlock v43 = block_b(l4, l3, p.theta, p.psi);
    const double Em = std::exp(-kappa * p.r / 2.0);
    const double Ep = std::exp(kappa * p.r / 2.0);
    v << u12.value * Em, v21.value * Ep, u34.value * Ep, v43.value * Em;
    if (!want_d) return;
    d[0] << -0.5 * kappa * u12.value * Em, 0.5 * kappa * v21.value * Ep,
        0.5 * kappa * u34.value * Ep, -0.5 * kappa * v43.value * Em;
    d[1] << u12.dtheta * Em, v21.dtheta * Ep, u34.dtheta * Ep, v43.dtheta * Em;
    d[2] << u12.dpsi * Em, v21.dpsi * Ep, u34.dpsi * Ep, v43.dpsi * Em;
  };
  SpinorField f;
  f.value = [eval](const Point& p) {
    Spinor v;
    std::array<Spinor, 3> d;
    eval(p, false, v, d);
    return v;
  };
  f.dcoord = [eval](const Point& p) {
    Spinor v;
    std::array<Spinor, 3> d;
    eval(p, true, v, d);
    return d;
  };
  return f;
}

SpinorField killing_spinor_imaginary(const Eigen::Vector4cd& lambda,
                                     double kappa) {
  auto eval = [lambda, kappa](const Point& p, bool want_d, Spinor& v,
                              std::array<Spinor, 3>& d) {
    const Complex l1 = lambda[0], l2 = lambda[1], l3 = lambda[2],
                  l4 = lambda[3];
    const AngularBlock up = block_a(l1, l2, p.theta, p.psi);
    const AngularBlock um = block_a(l3, l4, p.theta, p.psi);
    const AngularBlock vp = block_b(l4, l3, p.theta, p.psi);
    const AngularBlock vm = block_b(l2, l1, p.theta, p.psi);
    const double E = std::exp(kappa * p.r / 2.0);
    const double F = std::exp(-kappa * p.r / 2.0);
    v << up.value * E + um.value * F, vp.value * E + vm.value * F,
        -kI * up.value * E + kI * um.value * F,
        kI * vp.value * E - kI * vm.value * F;
    if (!want_d) return;
    const double dE = 0.5 * kappa * E, dF = -0.5 * kappa * F;
    d[0] << up.value * dE + um.value * dF, vp.value * dE + vm.value * dF,
        -kI * up.value * dE + kI * um.value * dF,
        kI * vp.value * dE - kI * vm.value * dF;
    d[1] << up.dtheta * E + um.dtheta * F, vp.dtheta * E + vm.dtheta * F,
        -kI * up.dtheta * E + kI * um.dtheta * F,
        kI * vp.dtheta * E - kI * vm.dtheta * F;
    d[2] << up.dpsi * E + um.dpsi * F, vp.dpsi * E + vm.dpsi * F,
        -kI * up.dpsi * E + kI * um.dpsi * F,
        kI * vp.dpsi * E - kI * vm.dpsi * F;
  };
  SpinorField f;
  f.value = [eval](const Point& p) {
    Spinor v;
    std::array<Spinor, 3> d;
    eval(p, false, v, d);
    return v;
  };
  f.dcoord = [eval](const Point& p) {
    Spinor v;
    std::array<Spinor, 3> d;
    eval(p, true, v, d);
    return d;
  };
  return f;
}

Spinor spin_derivative(const InitialDataFamily& data, const SpinorField& field,
                       int j, const Point& p) {
  const OrthonormalFrame fr = orthonormal_frame(data, p);
  const std::array<Spinor, 3> dc = field.partials(p);
  Spinor directional = Spinor::Zero();
  for (int c = 0; c < 3; ++c) directional += fr.E(j, c) * dc[c];

  const ConnectionCoefficients w = frame_connection(data, p);
  SpinorMatrix conn = SpinorMatrix::Zero();
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      if (w[j](k, l) != 0.0) {
        conn += 0.25 * w[j](k, l) * (gamma_matrix(k + 1) * gamma_matrix(l + 1));
      }
    }
  return directional + conn * field.value(p);
}

Spinor hypersurface_nabla(const InitialDataFamily& data,
                          const SpinorField& field, int i, const Point& p) {
  const Eigen::Matrix3d h = h_orthonormal(data, p);
  SpinorMatrix hterm = SpinorMatrix::Zero();
  for (int j = 0; j < 3; ++j) {
    hterm += -0.5 * h(i, j) * (gamma_matrix(0) * gamma_matrix(j + 1));
  }
  return spin_derivative(data, field, i, p) + hterm * field.value(p);
}

SpinorMatrix killing_connection_matrix(const InitialDataFamily& data,
                                       const Point& p, int i,
                                       ConnectionVariant variant) {
  const Eigen::Matrix3d h = h_orthonormal(data, p);
  SpinorMatrix m = SpinorMatrix::Zero();
  for (int j = 0; j < 3; ++j) {
    m += -0.5 * h(i, j) * (gamma_matrix(0) * gamma_matrix(j + 1));
  }
  if (variant == ConnectionVariant::E0Killing) {
    m += 0.5 * data.kappa() * (gamma_matrix(0) * gamma_matrix(i + 1));
  } else {
    m += 0.5 * data.kappa() * kI * gamma_matrix(i + 1);
  }
  return m;
}

Spinor nabla_hat(const InitialDataFamily& data, const SpinorField& field,
                 int i, const Point& p, ConnectionVariant variant) {
  return spin_derivative(data, field, i, p) +
         killing_connection_matrix(data, p, i, variant) * field.value(p);
}

Spinor dirac_witten(const InitialDataFamily& data, const SpinorField& field,
                    const Point& p) {
  Spinor out = Spinor::Zero();
  for (int i = 0; i < 3; ++i) {
    out += gamma_matrix(i + 1) * hypersurface_nabla(data, field, i, p);
  }
  return out;
}

Spinor dirac_hat(const InitialDataFamily& data, const SpinorField& field,
                 const Point& p, ConnectionVariant variant) {
  const double kappa = data.kappa();
  Spinor out = dirac_witten(data, field, p);
  if (variant == ConnectionVariant::E0Killing) {
    out += 1.5 * kappa * (gamma_matrix(0) * field.value(p));
  } else {
    out += -1.5 * kappa * kI * field.value(p);
  }
  return out;
}

Spinor dirac_hat_star(const InitialDataFamily& data, const SpinorField& field,
                      const Point& p, ConnectionVariant variant) {
  const double kappa = data.kappa();
  Spinor out = dirac_witten(data, field, p);
  if (variant == ConnectionVariant::E0Killing) {
    out += 1.5 * kappa * (gamma_matrix(0) * field.value(p));
  } else {
    out += 1.5 * kappa * kI * field.value(p);
  }
  return out;
}

Spinor rough_laplacian(const InitialDataFamily& data, const SpinorField& field,
                       const Point& p, ConnectionVariant variant) {
  // sigma_i = nabla-hat_i field as a spinor field of its own (finite
  // differences are used for its partials)
  std::array<SpinorField, 3> sigma;
  for (int i = 0; i < 3; ++i) {
    sigma[i].value = [&data, &field, i, variant](const Point& q) {
      return nabla_hat(data, field, i, q, variant);
    };
    sigma[i].fd_step = field.fd_step;
  }
  const ConnectionCoefficients w = frame_connection(data, p);
  Spinor out = Spinor::Zero();
  for (int i = 0; i < 3; ++i) {
    out -= spin_derivative(data, sigma[i], i, p);
    for (int j = 0; j < 3; ++j) {
      // <nabla_{e_i} e_i, e_j> sigma_j
      out += w[i](i, j) * sigma[j].value(p);
    }
    out += killing_connection_matrix(data, p, i, variant) * sigma[i].value(p);
  }
  return out;
}

SpinorMatrix curvature_endomorphism(const InitialDataFamily& data,
                                    const Point& p, ConnectionVariant variant) {
  const double kappa = data.kappa();
  const double scal = riemann(data, p).scalar();
  const Eigen::Matrix3d h = h_orthonormal(data, p);
  const HDerivatives dh = covariant_derivative_h(data, p);
  const double trh = h.trace();

  double scalar_part = scal + trh * trh - h.squaredNorm() + 6.0 * kappa * kappa;
  if (variant == ConnectionVariant::E0Killing) {
    scalar_part -= 4.0 * kappa * trh;
  }
  SpinorMatrix m = 0.25 * scalar_part * SpinorMatrix::Identity();
  for (int i = 0; i < 3; ++i) {
    const double codazzi = dh.divergence[i] - dh.grad_trace[i];
    m += -0.5 * codazzi * (gamma_matrix(0) * gamma_matrix(i + 1));
  }
  return m;
}

double weitzenbock_residual(const InitialDataFamily& data,
                            const SpinorField& field, const Point& p,
                            ConnectionVariant variant) {
  SpinorField dhat_field;
  dhat_field.value = [&data, &field, variant](const Point& q) {
    return dirac_hat(data, field, q, variant);
  };
  dhat_field.fd_step = field.fd_step;
  const Spinor lhs = dirac_hat_star(data, dhat_field, p, variant);
  const Spinor lap = rough_laplacian(data, field, p, variant);
  const Spinor curv = curvature_endomorphism(data, p, variant) * field.value(p);
  return (lhs - lap - curv).cwiseAbs().maxCoeff();
}

double killing_residual(const InitialDataFamily& data, const SpinorField& field,
                        const Point& p, ConnectionVariant variant) {
  double res = 0.0;
  for (int i = 0; i < 3; ++i) {
    res = std::max(
        res, nabla_hat(data, field, i, p, variant).cwiseAbs().maxCoeff());
  }
  return res;
}

}  // namespace adsmass
