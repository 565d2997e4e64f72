#pragma once

#include "ionchain/params.hpp"

namespace testutil {

// Yb+ in a 369 nm cavity with kappa = 2 pi 0.2 MHz, the reference setup.
inline ionchain::DimensionlessParams yb(double d0 = 49.795, double eta = 0.0, double delta_c = 0.0) {
  auto p = ionchain::with_d0_ratio(ionchain::to_dimensionless(ionchain::SIParams{}), d0);
  p.eta = eta;
  p.delta_c = delta_c;
  return p;
}

} // namespace testutil
