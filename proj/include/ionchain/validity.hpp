#pragma once

#include "ionchain/gaussian.hpp"
#include "ionchain/modes.hpp"

#include <string>

namespace ionchain {

struct ValidityCheck {
  double barrier = 0.0;  // hbar*kappa
  double e_vib = 0.0;    // hbar*kappa
  bool valid = false;
  bool degenerate_shift = false;
  double shift = 0.0;    // x0, applied to every ion
  IonConfiguration shifted_minimum;
  std::string warning;
};

/// Energy needed to move the whole chain by one optical period versus the
/// mean vibrational energy sum_n w_n (s_xx + s_pp)/2 of the mode-basis state.
/// The chain is shifted towards the side of the central ion (+2 x0 when it sits
/// at the origin) and re-minimised.
ValidityCheck validity_energy_check(const ClassicalEquilibrium& eq, const GaussianState& sigma,
                                    const ModeData& modes, const DimensionlessParams& p);

} // namespace ionchain
