#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "adsmass/spinor_fields.hpp"

using namespace adsmass;

namespace {

Eigen::Vector4cd random_lambda(std::mt19937& rng) {
  std::normal_distribution<double> nd;
  Eigen::Vector4cd l;
  for (int i = 0; i < 4; ++i) l[i] = Complex(nd(rng), nd(rng));
  return l;
}

Point random_point(std::mt19937& rng) {
  std::uniform_real_distribution<double> ur(1.5, 3.0), ut(0.3, 2.8),
      up(0.0, 6.2);
  return Point{ur(rng), ut(rng), up(rng)};
}

// Smooth test spinor field with nontrivial dependence on all coordinates.
SpinorField bump_field(std::mt19937& rng, double r_center) {
  std::normal_distribution<double> nd;
  Eigen::Vector4cd A;
  Eigen::Matrix<Complex, 4, 3> B;
  for (int i = 0; i < 4; ++i) {
    A[i] = Complex(nd(rng), nd(rng));
    for (int j = 0; j < 3; ++j) B(i, j) = Complex(nd(rng), nd(rng));
  }
  SpinorField f;
  f.value = [A, B, r_center](const Point& q) {
    const double g = std::exp(-0.3 * (q.r - r_center) * (q.r - r_center)) *
                     (1.0 + 0.2 * std::sin(q.theta) + 0.1 * std::cos(q.psi));
    Eigen::Vector3cd x;
    x << Complex(q.r - r_center), Complex(q.theta - 1.0),
        Complex(std::sin(q.psi));
    return Spinor(A * g + 0.1 * (B * x));
  };
  return f;
}

}  // namespace

TEST_CASE("Killing families solve their first-order systems") {
  std::mt19937 rng(42);
  auto ads = family_ads(1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Vector4cd lambda = random_lambda(rng);
    const Point p = random_point(rng);
    const SpinorField ks = killing_spinor_e0(lambda, 1.0);
    CHECK(killing_residual(*ads, ks, p, ConnectionVariant::E0Killing) < 1e-12);
    const SpinorField im = killing_spinor_imaginary(lambda, 1.0);
    CHECK(killing_residual(*ads, im, p, ConnectionVariant::Imaginary) < 1e-12);
  }
}

TEST_CASE("Killing families are four-dimensional (Gram determinants)") {
  const Point p{2.0, 1.2, 0.7};
  for (int variant = 0; variant < 2; ++variant) {
    Eigen::Matrix4cd gram = Eigen::Matrix4cd::Zero();
    std::array<Spinor, 4> basis;
    for (int k = 0; k < 4; ++k) {
      Eigen::Vector4cd lambda = Eigen::Vector4cd::Zero();
      lambda[k] = 1.0;
      const SpinorField f = variant == 0
                                ? killing_spinor_e0(lambda, 1.0)
                                : killing_spinor_imaginary(lambda, 1.0);
      basis[static_cast<std::size_t>(k)] = f.value(p);
    }
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        gram(i, j) = inner_pos(basis[static_cast<std::size_t>(i)],
                               basis[static_cast<std::size_t>(j)]);
    CHECK(std::abs(gram.determinant()) > 0.5);
  }
}

TEST_CASE("time rotation of the Killing constants preserves the norm") {
  std::mt19937 rng(9);
  const Eigen::Vector4cd l0 = random_lambda(rng);
  for (double t : {0.3, 1.0, 2.5}) {
    const Eigen::Vector4cd lt = lambda_at_time(l0, t, 1.0);
    CHECK(lt.norm() == doctest::Approx(l0.norm()).epsilon(1e-14));
  }
  CHECK((lambda_at_time(l0, 0.0, 1.0) - l0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("shifted Dirac operator annihilates the matching Killing family") {
  std::mt19937 rng(23);
  auto ads = family_ads(1.0);
  const Eigen::Vector4cd lambda = random_lambda(rng);
  const Point p = random_point(rng);
  const SpinorField ks = killing_spinor_e0(lambda, 1.0);
  CHECK(dirac_hat(*ads, ks, p, ConnectionVariant::E0Killing)
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  const SpinorField im = killing_spinor_imaginary(lambda, 1.0);
  CHECK(dirac_hat(*ads, im, p, ConnectionVariant::Imaginary)
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("connection matrices are Hermitian zeroth-order terms") {
  auto kot = family_kottler(1.0, 1.0);
  const Point p{2.0, 1.0, 0.4};
  for (int i = 0; i < 3; ++i) {
    for (ConnectionVariant v :
         {ConnectionVariant::E0Killing, ConnectionVariant::Imaginary}) {
      const SpinorMatrix m = killing_connection_matrix(*kot, p, i, v);
      CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("Weitzenbock identity closes at second order in the step") {
  std::mt19937 rng(7);
  auto kot = family_kottler(1.0, 1.0);
  SpinorField f = bump_field(rng, 1.8);
  const Point p{1.7, 1.1, 0.8};
  for (ConnectionVariant v :
       {ConnectionVariant::E0Killing, ConnectionVariant::Imaginary}) {
    f.fd_step = 2e-3;
    const double coarse = weitzenbock_residual(*kot, f, p, v);
    f.fd_step = 1e-3;
    const double fine = weitzenbock_residual(*kot, f, p, v);
    CHECK(coarse < 1e-4);
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.15));
  }
}

TEST_CASE("Weitzenbock identity on a non-vacuum family") {
  std::mt19937 rng(31);
  PerturbationSpec spec;
  spec.h_eps = 0.01;
  spec.h_profile = HProfile::Anisotropic;
  auto pert = family_perturbation(spec, 1.0);
  SpinorField f = bump_field(rng, 2.2);
  f.fd_step = 1e-3;
  const Point p{2.1, 1.3, 2.0};
  for (ConnectionVariant v :
       {ConnectionVariant::E0Killing, ConnectionVariant::Imaginary}) {
    CHECK(weitzenbock_residual(*pert, f, p, v) < 1e-5);
  }
}

TEST_CASE("analytic partials of the Killing spinors match finite differences") {
  std::mt19937 rng(13);
  const Eigen::Vector4cd lambda = random_lambda(rng);
  const Point p = random_point(rng);
  for (int variant = 0; variant < 2; ++variant) {
    SpinorField f = variant == 0 ? killing_spinor_e0(lambda, 1.0)
                                 : killing_spinor_imaginary(lambda, 1.0);
    REQUIRE(f.analytic());
    const auto exact = f.partials(p);
    f.dcoord = nullptr;  // force the finite-difference path
    f.fd_step = 1e-5;
    const auto fd = f.partials(p);
    for (int c = 0; c < 3; ++c) {
      CHECK((exact[static_cast<std::size_t>(c)] -
             fd[static_cast<std::size_t>(c)])
                .cwiseAbs()
                .maxCoeff() < 1e-8);
    }
  }
}
