#include "helpers.hpp"
#include "ionchain/dynamics.hpp"
#include "ionchain/entanglement.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <random>

using namespace ionchain;
using testutil::yb;

namespace {

struct Point {
  DimensionlessParams p;
  ClassicalEquilibrium eq;
  ModeData modes;
  LinearModel model;
};

Point make_point(const DimensionlessParams& p, Branch want = Branch::BrokenLeft) {
  const auto set = find_equilibria(p);
  const ClassicalEquilibrium* e = want == Branch::Symmetric ? set.symmetric() : set.broken_left();
  if (!e) e = &set.equilibria.at(0);
  Point pt{p, *e, {}, {}};
  pt.modes = normal_modes(pt.eq, p);
  pt.model = build_linear_model(pt.eq, pt.modes, p);
  return pt;
}

// Quadratic Hamiltonian matrix of -D (X^2+P^2)/2 + sum w (x^2+p^2)/2 + 2 sum g X x.
Mat8 hamiltonian_drift(double delta_bar, const Vec3& omega, const Vec3& g, double gamma) {
  Mat8 h = Mat8::Zero();
  h(0, 0) = h(1, 1) = -delta_bar;
  for (int n = 0; n < 3; ++n) {
    h(2 + 2 * n, 2 + 2 * n) = h(3 + 2 * n, 3 + 2 * n) = omega(n);
    h(0, 2 + 2 * n) = h(2 + 2 * n, 0) = 2 * g(n);
  }
  Mat8 a = symplectic_form(4) * h;
  a.diagonal() -= (Eigen::Matrix<double, 8, 1>() << 1, 1, Eigen::Matrix<double, 6, 1>::Constant(gamma / 2)).finished();
  return a;
}

// Lyapunov solution through the eigenbasis of A.
Eigen::MatrixXd lyapunov_eig(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(A);
  const Eigen::MatrixXcd v = es.eigenvectors();
  const Eigen::VectorXcd l = es.eigenvalues();
  const Eigen::MatrixXcd vi = v.inverse();
  Eigen::MatrixXcd qt = vi * Q.cast<std::complex<double>>() * vi.transpose();
  for (int i = 0; i < qt.rows(); ++i)
    for (int j = 0; j < qt.cols(); ++j) qt(i, j) /= -(l(i) + l(j));
  return (v * qt * v.transpose()).real();
}

} // namespace

TEST_CASE("decoupled steady state") {
  const auto pt = make_point(yb(49.795), Branch::Symmetric);
  CHECK(pt.model.g.cwiseAbs().maxCoeff() == 0.0);
  const auto st = steady_state_covariance(pt.model);
  Eigen::VectorXd expect(8);
  expect << 0.5, 0.5, 10.5, 10.5, 10.5, 10.5, 10.5, 10.5;
  CHECK((st.sigma - Eigen::MatrixXd(expect.asDiagonal())).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(st.basis == Basis::Modes);
}

TEST_CASE("drift matrix follows from the quadratic Hamiltonian") {
  for (double d0 : {48.28, 48.99, 49.795})
    for (double dc : {-6.0, -1.5}) {
      const auto pt = make_point(yb(d0, 80, dc));
      const Mat8 ref = hamiltonian_drift(pt.model.delta_bar, pt.modes.omega_n, pt.model.g, pt.p.gamma_motion);
      CHECK((pt.model.A - ref).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
      CHECK(pt.model.delta_bar == doctest::Approx(pt.eq.delta_bar));
      CHECK(pt.model.alpha == doctest::Approx(std::sqrt(pt.eq.photon_number)));
      for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) {
          if (m == n) continue;
          CHECK(pt.model.A(2 + 2 * m, 2 + 2 * n) == 0.0);
          CHECK(pt.model.A(3 + 2 * m, 3 + 2 * n) == 0.0);
          CHECK(pt.model.A(2 + 2 * m, 3 + 2 * n) == 0.0);
          CHECK(pt.model.A(3 + 2 * m, 2 + 2 * n) == 0.0);
        }
      CHECK(pt.model.D(0, 0) == 1.0);
      CHECK(pt.model.D(1, 1) == 1.0);
      CHECK(pt.model.D(4, 4) == doctest::Approx(pt.p.gamma_motion * 10.5));
    }
}

TEST_CASE("steady state against an eigenbasis Lyapunov solver") {
  for (double eta : {20.0, 60.0, 150.0}) {
    const auto pt = make_point(yb(48.99, eta, -3));
    REQUIRE(pt.model.stable);
    const auto st = steady_state_covariance(pt.model);
    const Eigen::MatrixXd ref = lyapunov_eig(pt.model.A, pt.model.D);
    CHECK((st.sigma - ref).cwiseAbs().maxCoeff() <= 1e-6 * ref.cwiseAbs().maxCoeff());
    CHECK(lyapunov_residual(pt.model.A, st.sigma, pt.model.D) < kLyapunovResidualTolerance);
    CHECK(physicality_margin(st.sigma) > -1e-9);
    CHECK((st.sigma - st.sigma.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("generic Lyapunov solver") {
  std::mt19937 rng(7);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXd a(6, 6), b(6, 6);
    for (int i = 0; i < 36; ++i) {
      a(i) = n01(rng);
      b(i) = n01(rng);
    }
    a -= (Eigen::EigenSolver<Eigen::MatrixXd>(a).eigenvalues().real().maxCoeff() + 1.0) *
         Eigen::MatrixXd::Identity(6, 6);
    const Eigen::MatrixXd q = b * b.transpose();
    const Eigen::MatrixXd x = solve_lyapunov(a, q);
    CHECK(lyapunov_residual(a, x, q) < 1e-10 * q.norm());
    CHECK((x - lyapunov_eig(a, q)).norm() < 1e-8 * x.norm());
  }
}

TEST_CASE("strong motional damping thermalises the ions") {
  auto p = yb(48.99, 60, -3);
  p.gamma_motion = 1e3;
  const auto pt = make_point(p);
  const auto st = steady_state_covariance(pt.model);
  for (int k = 2; k < 8; ++k) CHECK(st.sigma(k, k) == doctest::Approx(10.5).epsilon(1e-2));
  CHECK(log_negativity(st, {0}) == 0.0);
}

TEST_CASE("unstable models are rejected") {
  LinearModel m;
  m.stable = false;
  CHECK_THROWS_AS(steady_state_covariance(m), StabilityError);
  auto pt = make_point(yb(48.99, 60, -3));
  pt.model.A(0, 0) = 2.0;
  pt.model.stable = false;
  CHECK_THROWS_AS(steady_state_covariance(pt.model), StabilityError);
}

TEST_CASE("local basis transform") {
  for (auto lf : {LocalFrequency::Site, LocalFrequency::Trap}) {
    auto p = yb(49.2, 70, -2);
    p.local_frequency = lf;
    const auto pt = make_point(p);
    const Eigen::MatrixXd s = local_transform(pt.modes, p);
    const Eigen::MatrixXd om = symplectic_form(4);
    CHECK((s * om * s.transpose() - om).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(s.block<2, 2>(0, 0).isIdentity());
    CHECK(s.block(0, 2, 2, 6).isZero());

    const auto st = steady_state_covariance(pt.model);
    const auto loc = to_local_basis(st, pt.modes, p);
    CHECK(loc.basis == Basis::LocalIons);
    CHECK(loc.labels[1] == "ion1");
    CHECK(physicality_margin(loc.sigma) > -1e-9);
    CHECK(log_negativity(loc, {0}) == doctest::Approx(log_negativity(st, {0})).epsilon(1e-9));
    CHECK(von_neumann_entropy(loc) == doctest::Approx(von_neumann_entropy(st)).epsilon(1e-8));
    CHECK_THROWS_AS(to_local_basis(loc, pt.modes, p), std::invalid_argument);
  }

  ModeData trivial;
  trivial.omega_n = Vec3(0.7, 1.1, 2.3);
  trivial.site_omega = trivial.omega_n;
  trivial.M = Mat3::Identity();
  CHECK(local_transform(trivial, yb()).isIdentity(1e-15));
}
