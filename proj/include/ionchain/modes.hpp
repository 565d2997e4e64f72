#pragma once

#include "ionchain/equilibrium.hpp"

#include <stdexcept>

namespace ionchain {

class UnstableConfigurationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Normal modes of the linearised ion motion at one equilibrium.
struct ModeData {
  Vec3 omega_n = Vec3::Zero();     // kappa, ascending
  Mat3 M = Mat3::Identity();       // columns are mode vectors
  Vec3 c_n = Vec3::Zero();         // cavity couplings, kappa
  Vec3 overlaps = Vec3::Zero();    // |u_n . u_n(eta=0)|
  Vec3 site_omega = Vec3::Zero();  // sqrt(K_ss / mu), kappa
};

/// Mode vectors of the bare three-ion Coulomb chain, sorted by frequency:
/// (1,1,1)/sqrt3, (1,0,-1)/sqrt2, (1,-2,1)/sqrt6.
Mat3 reference_modes();

/// Diagonalises K/mu, K the Hessian selected by p.hessian_source. Mode signs
/// are fixed so each vector has a non-negative overlap with its reference.
/// Throws UnstableConfigurationError on a non-positive eigenvalue.
ModeData normal_modes(const ClassicalEquilibrium& eq, const DimensionlessParams& p);

} // namespace ionchain
