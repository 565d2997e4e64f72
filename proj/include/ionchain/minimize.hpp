#pragma once

#include "ionchain/potential.hpp"

#include <string>

namespace ionchain {

struct MinimizeOptions {
  double gradient_tolerance = 1e-10;  // hbar*kappa/x0, target
  double stall_tolerance = 1e-9;      // accepted when round-off stops progress first
  int max_iterations = 500;
  int newton_polish_iterations = 50;
};

struct MinimizeResult {
  IonConfiguration cfg;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string message;
};

/// Gradient norm reachable in double precision at cfg: 4 |H|_inf eps max|xi|.
double gradient_floor(const IonConfiguration& cfg, const DimensionlessParams& p);

/// Converged when |grad| < gradient_tolerance, or below
/// max(stall_tolerance, gradient_floor) once round-off dominates.
bool stationary(const IonConfiguration& cfg, double gradient_norm, const DimensionlessParams& p,
                const MinimizeOptions& opt = {});

/// BFGS on v_tot with the analytic gradient, finished by Newton steps with the
/// analytic Hessian once a positive-definite basin is reached.
MinimizeResult minimize_potential(const IonConfiguration& seed, const DimensionlessParams& p,
                                  const MinimizeOptions& opt = {});

/// Minimises v_tot over the mirror-symmetric family (-d, 0, d).
MinimizeResult minimize_symmetric(double half_spacing_seed, const DimensionlessParams& p,
                                  const MinimizeOptions& opt = {});

} // namespace ionchain
