#pragma once

#include "ionchain/params.hpp"

#include <Eigen/Dense>

#include <array>
#include <stdexcept>

namespace ionchain {

inline constexpr int kIons = 3;

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Raised when two ions coincide (Coulomb divergence) or cross.
class DivergenceError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Ion positions in units of x0, strictly increasing.
struct IonConfiguration {
  Vec3 xi = Vec3::Zero();

  IonConfiguration() = default;
  explicit IonConfiguration(const Vec3& v) : xi(v) {}
  IonConfiguration(double a, double b, double c) : xi(a, b, c) {}

  bool ordered() const { return xi(0) < xi(1) && xi(1) < xi(2); }
  /// Mirror image: xi -> -reverse(xi).
  IonConfiguration mirrored() const { return IonConfiguration(-xi(2), -xi(1), -xi(0)); }
};

/// Sum_j cos^2(pi xi_j / 2), in [0, 3].
double f_bar(const IonConfiguration& cfg);

/// Effective cavity detuning in units of kappa: delta_c - C * f_bar.
double delta_eff(const IonConfiguration& cfg, const DimensionlessParams& p);

/// d(delta_eff)/d(xi_s), units kappa/x0.
Vec3 delta_eff_gradient(const IonConfiguration& cfg, const DimensionlessParams& p);

/// Total potential in hbar*kappa: eta^2 atan(-delta_eff) + trap + Coulomb.
double v_tot(const IonConfiguration& cfg, const DimensionlessParams& p);

/// Optical part only, eta^2 atan(-delta_eff).
double v_optical(const IonConfiguration& cfg, const DimensionlessParams& p);

/// Trap plus Coulomb.
double v_ion(const IonConfiguration& cfg, const DimensionlessParams& p);

Vec3 gradient(const IonConfiguration& cfg, const DimensionlessParams& p);

/// Exact Hessian of v_tot. With source == Frozen the back-action term
/// F''(delta) grad(delta) grad(delta)^T is dropped, which is the curvature of
/// the optical potential at fixed photon number.
Mat3 hessian(const IonConfiguration& cfg, const DimensionlessParams& p,
             HessianSource source = HessianSource::Effective);

} // namespace ionchain
