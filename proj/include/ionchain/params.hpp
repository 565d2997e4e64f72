#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

namespace ionchain {

/// Thrown for inputs that violate a parameter invariant (non-positive mass,
/// negative pump, unknown enum spelling, ...).
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

namespace constants {
inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double epsilon0 = 8.8541878128e-12;    // F/m
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
} // namespace constants

/// Which potential supplies the curvature used for the normal modes.
///   Effective: Hessian of the arctan effective potential (default).
///   Frozen:    photon number held at its equilibrium value, i.e. the
///              curvature of hbar |a|^2 U0 sum f(x_j) + V_ion.
enum class HessianSource { Effective, Frozen };

/// Frequency used to normalise the local (single-ion) quadratures.
///   Site: sqrt(K_ss / m) for ion s, its frequency with the other ions clamped.
///   Trap: the bare trap frequency for every ion.
enum class LocalFrequency { Site, Trap };

std::string to_string(HessianSource s);
std::string to_string(LocalFrequency f);
HessianSource parse_hessian_source(const std::string& s);
LocalFrequency parse_local_frequency(const std::string& s);

/// Experimental parameters in SI units. Rates are angular (rad/s).
struct SIParams {
  double ion_mass = 171.0 * constants::atomic_mass_unit;
  double ion_charge = constants::elementary_charge;
  double wavelength = 369e-9;
  double kappa = 2.0 * std::numbers::pi * 0.2e6;  // field decay, photons decay at 2 kappa
  double cooperativity = 0.5;
  double delta_c = 0.0;
  double eta = 0.0;
  double trap_omega = 2.0 * std::numbers::pi * 0.5e6;
  double gamma_motion = 1e-6 * 2.0 * std::numbers::pi * 0.2e6;
  double n_thermal = 10.0;

  /// Throws ParameterError if an invariant is violated.
  void validate() const;
};

/// Everything in the internal unit system: hbar = 1, frequencies in kappa,
/// lengths in x0 = lambda/4, energies in hbar*kappa.
struct DimensionlessParams {
  double mu = 0.0;          // m kappa x0^2 / hbar
  double gamma_coul = 0.0;  // q^2 / (4 pi eps0 x0 hbar kappa)
  double c_coop = 0.5;
  double u0 = 0.5;          // U0 / kappa, equal to the cooperativity
  double delta_c = 0.0;
  double eta = 0.0;
  double omega = 0.0;
  double gamma_motion = 1e-6;
  double n_thermal = 10.0;
  double kx0 = std::numbers::pi / 2.0;
  HessianSource hessian_source = HessianSource::Effective;
  LocalFrequency local_frequency = LocalFrequency::Site;

  void validate() const;

  /// Copy with the cooperativity replaced (keeps u0 == c_coop).
  DimensionlessParams with_cooperativity(double c) const;
};

/// Unit conversion. Scale data (mass, charge, wavelength, kappa) needed for
/// the inverse map is kept alongside.
DimensionlessParams to_dimensionless(const SIParams& si);
SIParams to_si(const DimensionlessParams& p, double ion_mass, double wavelength, double kappa);

/// Free three-ion spacing d0/x0 for the trap frequency stored in p:
/// (d0/x0)^3 = (5/4) gamma_C / (mu omega^2).
double d0_from_omega(const DimensionlessParams& p);
double d0_from_omega(double omega, double mu, double gamma_coul);
/// Inverse of d0_from_omega, returns omega/kappa.
double omega_from_d0(double d0_ratio, double mu, double gamma_coul);

/// Copy of p with the trap frequency set so that the free spacing is d0_ratio.
DimensionlessParams with_d0_ratio(const DimensionlessParams& p, double d0_ratio);

} // namespace ionchain
