#include "ionchain/params.hpp"

#include <cmath>

namespace ionchain {

namespace {
void require(bool ok, const char* what) {
  if (!ok) throw ParameterError(what);
}
} // namespace

std::string to_string(HessianSource s) {
  return s == HessianSource::Effective ? "effective" : "frozen";
}

std::string to_string(LocalFrequency f) {
  return f == LocalFrequency::Site ? "site" : "trap";
}

HessianSource parse_hessian_source(const std::string& s) {
  if (s == "effective") return HessianSource::Effective;
  if (s == "frozen") return HessianSource::Frozen;
  throw ParameterError("hessian_source must be 'effective' or 'frozen', got '" + s + "'");
}

LocalFrequency parse_local_frequency(const std::string& s) {
  if (s == "site") return LocalFrequency::Site;
  if (s == "trap") return LocalFrequency::Trap;
  throw ParameterError("local_frequency must be 'site' or 'trap', got '" + s + "'");
}

void SIParams::validate() const {
  require(std::isfinite(ion_mass) && ion_mass > 0, "ion_mass must be > 0");
  require(std::isfinite(ion_charge) && ion_charge != 0, "ion_charge must be non-zero");
  require(std::isfinite(wavelength) && wavelength > 0, "wavelength must be > 0");
  require(std::isfinite(kappa) && kappa > 0, "kappa must be > 0");
  require(std::isfinite(cooperativity) && cooperativity > 0, "cooperativity must be > 0");
  require(std::isfinite(delta_c), "delta_c must be finite");
  require(std::isfinite(eta) && eta >= 0, "eta must be >= 0");
  require(std::isfinite(trap_omega) && trap_omega > 0, "trap_omega must be > 0");
  require(std::isfinite(gamma_motion) && gamma_motion > 0, "gamma_motion must be > 0");
  require(std::isfinite(n_thermal) && n_thermal >= 0, "n_thermal must be >= 0");
}

void DimensionlessParams::validate() const {
  require(std::isfinite(mu) && mu > 0, "mu must be > 0");
  require(std::isfinite(gamma_coul) && gamma_coul > 0, "gamma_coul must be > 0");
  require(std::isfinite(c_coop) && c_coop > 0, "cooperativity must be > 0");
  require(std::isfinite(delta_c), "delta_c must be finite");
  require(std::isfinite(eta) && eta >= 0, "eta must be >= 0");
  require(std::isfinite(omega) && omega > 0, "omega must be > 0");
  require(std::isfinite(gamma_motion) && gamma_motion > 0, "gamma must be > 0");
  require(std::isfinite(n_thermal) && n_thermal >= 0, "n_thermal must be >= 0");
}

DimensionlessParams DimensionlessParams::with_cooperativity(double c) const {
  DimensionlessParams q = *this;
  q.c_coop = c;
  q.u0 = c;
  return q;
}

DimensionlessParams to_dimensionless(const SIParams& si) {
  si.validate();
  using namespace constants;
  const double x0 = si.wavelength / 4.0;
  DimensionlessParams p;
  p.mu = si.ion_mass * si.kappa * x0 * x0 / hbar;
  p.gamma_coul = si.ion_charge * si.ion_charge /
                 (4.0 * std::numbers::pi * epsilon0 * x0 * hbar * si.kappa);
  p.c_coop = si.cooperativity;
  p.u0 = si.cooperativity;
  p.delta_c = si.delta_c / si.kappa;
  p.eta = si.eta / si.kappa;
  p.omega = si.trap_omega / si.kappa;
  p.gamma_motion = si.gamma_motion / si.kappa;
  p.n_thermal = si.n_thermal;
  p.kx0 = std::numbers::pi / 2.0;
  return p;
}

SIParams to_si(const DimensionlessParams& p, double ion_mass, double wavelength, double kappa) {
  using namespace constants;
  const double x0 = wavelength / 4.0;
  SIParams si;
  si.ion_mass = ion_mass;
  si.wavelength = wavelength;
  si.kappa = kappa;
  // mass is an input, so mu carries no new information; charge comes from gamma_coul.
  si.ion_charge = std::sqrt(p.gamma_coul * 4.0 * std::numbers::pi * epsilon0 * x0 * hbar * kappa);
  si.cooperativity = p.c_coop;
  si.delta_c = p.delta_c * kappa;
  si.eta = p.eta * kappa;
  si.trap_omega = p.omega * kappa;
  si.gamma_motion = p.gamma_motion * kappa;
  si.n_thermal = p.n_thermal;
  return si;
}

double d0_from_omega(double omega, double mu, double gamma_coul) {
  if (!(omega > 0)) throw ParameterError("omega must be > 0");
  return std::cbrt(1.25 * gamma_coul / (mu * omega * omega));
}

double d0_from_omega(const DimensionlessParams& p) {
  return d0_from_omega(p.omega, p.mu, p.gamma_coul);
}

double omega_from_d0(double d0_ratio, double mu, double gamma_coul) {
  if (!(d0_ratio > 0)) throw ParameterError("d0_ratio must be > 0");
  return std::sqrt(1.25 * gamma_coul / (mu * d0_ratio * d0_ratio * d0_ratio));
}

DimensionlessParams with_d0_ratio(const DimensionlessParams& p, double d0_ratio) {
  DimensionlessParams q = p;
  q.omega = omega_from_d0(d0_ratio, p.mu, p.gamma_coul);
  return q;
}

} // namespace ionchain
