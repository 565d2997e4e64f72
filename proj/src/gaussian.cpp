#include "ionchain/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace ionchain {

std::string to_string(Basis b) {
  switch (b) {
    case Basis::Modes: return "modes";
    case Basis::LocalIons: return "local_ions";
    case Basis::Generic: return "generic";
  }
  return "?";
}

Eigen::MatrixXd symplectic_form(int modes) {
  Eigen::MatrixXd om = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    om(2 * k, 2 * k + 1) = 1.0;
    om(2 * k + 1, 2 * k) = -1.0;
  }
  return om;
}

Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& sigma) {
  const int n = static_cast<int>(sigma.rows());
  if (n % 2 != 0 || sigma.cols() != n) throw InvalidStateError("covariance matrix must be 2K x 2K");
  // sqrt(sigma) (i Omega) sqrt(sigma) is Hermitian with spectrum +-nu_k.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (sigma + sigma.transpose()));
  if (es.eigenvalues().minCoeff() <= 0) throw InvalidStateError("covariance matrix not positive definite");
  const Eigen::MatrixXd root = es.operatorSqrt();
  const Eigen::MatrixXd skew = root * symplectic_form(n / 2) * root;
  const Eigen::MatrixXcd herm = std::complex<double>(0.0, 1.0) * skew.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hs(herm, Eigen::EigenvaluesOnly);
  // Eigenvalues ascending: -nu_max..-nu_min, nu_min..nu_max.
  return hs.eigenvalues().tail(n / 2);
}

double physicality_margin(const Eigen::MatrixXd& sigma) {
  const int n = static_cast<int>(sigma.rows());
  const Eigen::MatrixXcd m = sigma.cast<std::complex<double>>() +
                             std::complex<double>(0.0, 0.5) *
                                 symplectic_form(n / 2).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void require_physical(const Eigen::MatrixXd& sigma, double tol) {
  const auto n = sigma.rows();
  if (n == 0 || n % 2 != 0 || sigma.cols() != n) throw InvalidStateError("covariance matrix must be 2K x 2K");
  if (!sigma.allFinite()) throw InvalidStateError("covariance matrix has non-finite entries");
  const double asym = (sigma - sigma.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9 * std::max(1.0, sigma.cwiseAbs().maxCoeff()))
    throw InvalidStateError("covariance matrix is not symmetric");
  if (physicality_margin(sigma) < -tol) throw InvalidStateError("covariance matrix violates the uncertainty relation");
}

GaussianState reduce(const GaussianState& state, const std::vector<int>& keep) {
  const int k = state.modes();
  if (keep.empty()) throw std::invalid_argument("reduce: empty mode subset");
  for (std::size_t a = 0; a < keep.size(); ++a) {
    if (keep[a] < 0 || keep[a] >= k) throw std::out_of_range("reduce: mode index out of range");
    for (std::size_t b = 0; b < a; ++b)
      if (keep[a] == keep[b]) throw std::invalid_argument("reduce: repeated mode index");
  }
  const int m = static_cast<int>(keep.size());
  GaussianState out;
  out.basis = state.basis;
  out.sigma.resize(2 * m, 2 * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      out.sigma.block<2, 2>(2 * a, 2 * b) = state.sigma.block<2, 2>(2 * keep[a], 2 * keep[b]);
  for (int a : keep)
    out.labels.push_back(a < static_cast<int>(state.labels.size()) ? state.labels[a] : "mode" + std::to_string(a));
  return out;
}

Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& sigma, const std::vector<int>& modes) {
  Eigen::MatrixXd out = sigma;
  for (int m : modes) {
    out.row(2 * m + 1) *= -1.0;
    out.col(2 * m + 1) *= -1.0;
  }
  return out;
}

GaussianState two_mode_squeezed_vacuum(double r) {
  GaussianState s;
  s.sigma = Eigen::MatrixXd::Zero(4, 4);
  const double c = std::cosh(2.0 * r) / 2.0;
  const double sh = std::sinh(2.0 * r) / 2.0;
  s.sigma.diagonal().setConstant(c);
  s.sigma(0, 2) = s.sigma(2, 0) = sh;
  s.sigma(1, 3) = s.sigma(3, 1) = -sh;
  s.labels = {"a", "b"};
  return s;
}

GaussianState vacuum(int modes) { return thermal(std::vector<double>(modes, 0.0)); }

GaussianState thermal(const std::vector<double>& mean_occupations) {
  const int k = static_cast<int>(mean_occupations.size());
  GaussianState s;
  s.sigma = Eigen::MatrixXd::Zero(2 * k, 2 * k);
  for (int i = 0; i < k; ++i) {
    s.sigma(2 * i, 2 * i) = s.sigma(2 * i + 1, 2 * i + 1) = mean_occupations[i] + 0.5;
    s.labels.push_back("mode" + std::to_string(i));
  }
  return s;
}

} // namespace ionchain
