#include "ionchain/validity.hpp"

#include <cmath>

namespace ionchain {

ValidityCheck validity_energy_check(const ClassicalEquilibrium& eq, const GaussianState& sigma,
                                    const ModeData& modes, const DimensionlessParams& p) {
  if (sigma.basis != Basis::Modes || sigma.modes() != 1 + kIons)
    throw std::invalid_argument("validity check needs the (cavity, modes) steady state");
  ValidityCheck v;
  for (int n = 0; n < kIons; ++n) {
    const int x = 2 + 2 * n;
    v.e_vib += modes.omega_n(n) * 0.5 * (sigma.sigma(x, x) + sigma.sigma(x + 1, x + 1));
  }

  v.shift = eq.cfg.xi(1) < -kSymmetryTolerance ? -2.0 : 2.0;
  const IonConfiguration seed(eq.cfg.xi + Vec3::Constant(v.shift));
  const MinimizeResult r = minimize_potential(seed, p);
  v.shifted_minimum = r.cfg;
  if (!r.converged) v.warning = "shifted re-minimisation did not converge: " + r.message;
  if ((r.cfg.xi - eq.cfg.xi).cwiseAbs().maxCoeff() < 1e-6) {
    v.degenerate_shift = true;
    v.warning = "shifted seed relaxed back to the original minimum";
    v.barrier = 0.0;
  } else {
    v.barrier = v_tot(r.cfg, p) - eq.v_tot;
  }
  v.valid = v.barrier > v.e_vib;
  return v;
}

} // namespace ionchain
