#pragma once

#include "ionchain/scan.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ionchain {

/// Flat key = value run configuration. SI keys: ion_mass (kg) or
/// ion_mass_amu, ion_charge (C), wavelength (m), kappa (rad/s), trap_omega
/// (rad/s). Keys in units of kappa: eta, delta_c, gamma_motion. Dimensionless:
/// cooperativity, n_thermal, d0_ratio (overrides trap_omega). Options:
/// hessian_source, local_frequency, branch_policy, grid (repeatable),
/// g_list (comma separated), threads, exclude_margin, transition_eta_max.
struct RunConfig {
  SIParams si;
  std::optional<double> eta;
  std::optional<double> delta_c;
  std::optional<double> gamma_motion;
  std::optional<double> d0_ratio;
  HessianSource hessian_source = HessianSource::Effective;
  LocalFrequency local_frequency = LocalFrequency::Site;
  std::optional<BranchPolicy> branch_policy;
  std::vector<AxisRange> grid;
  std::vector<double> g_list = default_g_list();
  int threads = 1;
  double exclude_margin = 0.0;
  std::optional<double> transition_eta_max;

  /// Throws ParameterError for an unknown key or a malformed value.
  void set(const std::string& key, const std::string& value);
  DimensionlessParams resolve() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

std::vector<double> parse_double_list(const std::string& s);

} // namespace ionchain
