#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace ionchain {

class InvalidStateError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class Basis { Modes, LocalIons, Generic };
std::string to_string(Basis b);

/// Zero-mean Gaussian state. Quadrature order (x_1, p_1, x_2, p_2, ...),
/// sigma_ij = <{u_i, u_j}>/2, vacuum = I/2.
struct GaussianState {
  Eigen::MatrixXd sigma;
  Basis basis = Basis::Generic;
  std::vector<std::string> labels;

  int modes() const { return static_cast<int>(sigma.rows() / 2); }
};

/// Omega = direct sum of [[0, 1], [-1, 0]].
Eigen::MatrixXd symplectic_form(int modes);

/// Positive symplectic eigenvalues (eigenvalues of i Omega sigma), ascending.
/// Requires sigma symmetric positive definite.
Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& sigma);

/// Smallest eigenvalue of sigma + (i/2) Omega; >= 0 for physical states.
double physicality_margin(const Eigen::MatrixXd& sigma);

/// Throws InvalidStateError unless sigma is square, even-sized, symmetric and
/// satisfies the uncertainty relation within `tol`.
void require_physical(const Eigen::MatrixXd& sigma, double tol = 1e-9);

/// Partial trace: keep the listed modes in the listed order.
GaussianState reduce(const GaussianState& state, const std::vector<int>& keep);

/// Partial transpose on the listed modes (p -> -p).
Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& sigma, const std::vector<int>& modes);

/// Two-mode squeezed vacuum with squeezing r.
GaussianState two_mode_squeezed_vacuum(double r);
GaussianState vacuum(int modes);
GaussianState thermal(const std::vector<double>& mean_occupations);

} // namespace ionchain
