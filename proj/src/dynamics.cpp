#include "ionchain/dynamics.hpp"

#include <cmath>

namespace ionchain {

LinearModel build_linear_model(const ClassicalEquilibrium& eq, const ModeData& modes,
                               const DimensionlessParams& p) {
  if (!eq.hessian_pd) throw UnstableConfigurationError("equilibrium Hessian is not positive definite");
  LinearModel m;
  m.delta_bar = eq.delta_bar;
  m.alpha = std::abs(eq.a_bar);
  m.g = m.alpha * modes.c_n;
  m.positive_detuning = p.delta_c > 0;

  auto& A = m.A;
  A(0, 0) = -1.0;
  A(0, 1) = -m.delta_bar;
  A(1, 0) = m.delta_bar;
  A(1, 1) = -1.0;
  const double half_gamma = 0.5 * p.gamma_motion;
  for (int n = 0; n < kIons; ++n) {
    const int x = 2 + 2 * n;
    const int pn = x + 1;
    A(x, x) = -half_gamma;
    A(x, pn) = modes.omega_n(n);
    A(pn, x) = -modes.omega_n(n);
    A(pn, pn) = -half_gamma;
    A(1, x) = -2.0 * m.g(n);
    A(pn, 0) = -2.0 * m.g(n);
  }

  m.D.diagonal() << 1.0, 1.0, Eigen::Matrix<double, 6, 1>::Constant(p.gamma_motion * (p.n_thermal + 0.5));

  Eigen::EigenSolver<Mat8> es(A, false);
  m.max_real_eigenvalue = es.eigenvalues().real().maxCoeff();
  m.stable = m.max_real_eigenvalue < 0;
  return m;
}

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q) {
  const auto n = A.rows();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd L(n * n, n * n);
  // Column-major vec: vec(A X) = (I kron A) vec X, vec(X A^T) = (A kron I) vec X.
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      L.block(i * n, j * n, n, n) = id(i, j) * A + A(i, j) * id;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(L);

  Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(Q.data(), n * n);
  Eigen::VectorXd x = lu.solve(rhs);
  const Eigen::VectorXd r = rhs - L * x;
  x += lu.solve(r);

  Eigen::MatrixXd X = Eigen::Map<Eigen::MatrixXd>(x.data(), n, n);
  return 0.5 * (X + X.transpose());
}

double lyapunov_residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& sigma,
                         const Eigen::MatrixXd& Q) {
  return (A * sigma + sigma * A.transpose() + Q).norm();
}

GaussianState steady_state_covariance(const LinearModel& model) {
  if (!model.stable) throw StabilityError("drift matrix has an eigenvalue with non-negative real part");
  GaussianState s;
  s.sigma = solve_lyapunov(model.A, model.D);
  if (!s.sigma.allFinite()) throw NumericalError("singular Lyapunov system");
  const double res = lyapunov_residual(model.A, s.sigma, model.D);
  if (!(res < kLyapunovResidualTolerance))
    throw NumericalError("Lyapunov residual " + std::to_string(res) + " above tolerance");
  s.basis = Basis::Modes;
  s.labels = {"cavity", "mode1", "mode2", "mode3"};
  return s;
}

Eigen::MatrixXd local_transform(const ModeData& modes, const DimensionlessParams& p) {
  Eigen::MatrixXd S = Eigen::MatrixXd::Identity(kQuadratures, kQuadratures);
  for (int s = 0; s < kIons; ++s) {
    const double w_ref = p.local_frequency == LocalFrequency::Site ? modes.site_omega(s) : p.omega;
    for (int n = 0; n < kIons; ++n) {
      const double ratio = std::sqrt(w_ref / modes.omega_n(n));
      S(2 + 2 * s, 2 + 2 * n) = modes.M(s, n) * ratio;
      S(3 + 2 * s, 3 + 2 * n) = modes.M(s, n) / ratio;
    }
  }
  return S;
}

GaussianState to_local_basis(const GaussianState& state, const ModeData& modes,
                             const DimensionlessParams& p) {
  if (state.basis != Basis::Modes) throw std::invalid_argument("to_local_basis expects a mode-basis state");
  if (state.modes() != kModes) throw std::invalid_argument("to_local_basis expects cavity + 3 modes");
  const Eigen::MatrixXd S = local_transform(modes, p);
  GaussianState out;
  out.sigma = S * state.sigma * S.transpose();
  out.sigma = 0.5 * (out.sigma + out.sigma.transpose());
  out.basis = Basis::LocalIons;
  out.labels = {"cavity", "ion1", "ion2", "ion3"};
  return out;
}

} // namespace ionchain
