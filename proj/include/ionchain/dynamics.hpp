#pragma once

#include "ionchain/gaussian.hpp"
#include "ionchain/modes.hpp"

#include <stdexcept>

namespace ionchain {

inline constexpr int kModes = 1 + kIons;  // cavity + three motional modes
inline constexpr int kQuadratures = 2 * kModes;

using Mat8 = Eigen::Matrix<double, kQuadratures, kQuadratures>;

class StabilityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Linearised fluctuation dynamics du/dt = A u + noise, <noise noise> = D.
/// Quadrature order (X_c, P_c, x_1, p_1, x_2, p_2, x_3, p_3), cavity phase
/// rotated so that a_bar is real and non-negative.
struct LinearModel {
  Mat8 A = Mat8::Zero();
  Mat8 D = Mat8::Zero();
  double alpha = 0.0;       // |a_bar|
  double delta_bar = 0.0;   // kappa
  Vec3 g = Vec3::Zero();    // alpha * c_n
  double max_real_eigenvalue = 0.0;
  bool stable = false;
  bool positive_detuning = false;  // delta_c > 0: cavity heating regime
};

LinearModel build_linear_model(const ClassicalEquilibrium& eq, const ModeData& modes,
                               const DimensionlessParams& p);

/// Solves A X + X A^T + Q = 0 for general real A with no eigenvalue pair
/// summing to zero (vectorised Kronecker system, LU plus one refinement step).
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q);

double lyapunov_residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& sigma,
                         const Eigen::MatrixXd& Q);

inline constexpr double kLyapunovResidualTolerance = 1e-10;

/// Steady state in the mode basis, labels (cavity, mode1, mode2, mode3).
/// Throws StabilityError if the model is unstable and NumericalError if the
/// Lyapunov residual exceeds kLyapunovResidualTolerance.
GaussianState steady_state_covariance(const LinearModel& model);

/// Symplectic map from (cavity, modes) to (cavity, ions):
/// q_s = sum_n M_sn sqrt(w_s/w_n) x_n,  p_s = sum_n M_sn sqrt(w_n/w_s) p_n,
/// with w_s chosen by p.local_frequency.
Eigen::MatrixXd local_transform(const ModeData& modes, const DimensionlessParams& p);

GaussianState to_local_basis(const GaussianState& state, const ModeData& modes,
                             const DimensionlessParams& p);

} // namespace ionchain
