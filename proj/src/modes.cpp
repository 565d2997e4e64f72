#include "ionchain/modes.hpp"

#include <cmath>

namespace ionchain {

Mat3 reference_modes() {
  Mat3 r;
  const double a = 1.0 / std::sqrt(3.0);
  const double b = 1.0 / std::sqrt(2.0);
  const double c = 1.0 / std::sqrt(6.0);
  r << a, b, c,
       a, 0.0, -2.0 * c,
       a, -b, c;
  return r;
}

ModeData normal_modes(const ClassicalEquilibrium& eq, const DimensionlessParams& p) {
  const Mat3 k = hessian(eq.cfg, p, p.hessian_source);
  Eigen::SelfAdjointEigenSolver<Mat3> es(k / p.mu);
  if (es.info() != Eigen::Success) throw UnstableConfigurationError("mode diagonalisation failed");

  ModeData m;
  const Vec3 ev = es.eigenvalues();
  if (!(ev(0) > 0)) throw UnstableConfigurationError("non-positive normal-mode eigenvalue");
  m.omega_n = ev.cwiseSqrt();
  m.M = es.eigenvectors();

  const Mat3 ref = reference_modes();
  for (int n = 0; n < kIons; ++n) {
    if (m.M.col(n).dot(ref.col(n)) < 0) m.M.col(n) *= -1.0;
    m.overlaps(n) = std::abs(m.M.col(n).dot(ref.col(n)));
  }

  const Vec3 dd = delta_eff_gradient(eq.cfg, p);
  for (int n = 0; n < kIons; ++n)
    m.c_n(n) = -m.M.col(n).dot(dd) / std::sqrt(2.0 * p.mu * m.omega_n(n));

  m.site_omega = (k.diagonal() / p.mu).cwiseSqrt();
  return m;
}

} // namespace ionchain
