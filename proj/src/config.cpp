#include "ionchain/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ionchain {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ParameterError(key + ": expected a number, got '" + v + "'");
  }
  if (used != v.size() || !std::isfinite(x)) throw ParameterError(key + ": expected a number, got '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  if (x != std::floor(x)) throw ParameterError(key + ": expected an integer, got '" + v + "'");
  return static_cast<int>(x);
}

} // namespace

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double("list", item));
  }
  if (out.empty()) throw ParameterError("empty list '" + s + "'");
  return out;
}

void RunConfig::set(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "ion_mass") si.ion_mass = to_double(key, v);
  else if (key == "ion_mass_amu") si.ion_mass = to_double(key, v) * constants::atomic_mass_unit;
  else if (key == "ion_charge") si.ion_charge = to_double(key, v);
  else if (key == "wavelength") si.wavelength = to_double(key, v);
  else if (key == "kappa") si.kappa = to_double(key, v);
  else if (key == "trap_omega") si.trap_omega = to_double(key, v);
  else if (key == "cooperativity") si.cooperativity = to_double(key, v);
  else if (key == "n_thermal") si.n_thermal = to_double(key, v);
  else if (key == "eta") eta = to_double(key, v);
  else if (key == "delta_c") delta_c = to_double(key, v);
  else if (key == "gamma_motion") gamma_motion = to_double(key, v);
  else if (key == "d0_ratio") d0_ratio = to_double(key, v);
  else if (key == "hessian_source") hessian_source = parse_hessian_source(v);
  else if (key == "local_frequency") local_frequency = parse_local_frequency(v);
  else if (key == "branch_policy") branch_policy = parse_branch_policy(v);
  else if (key == "grid") grid.push_back(parse_axis_range(v));
  else if (key == "g_list") g_list = parse_double_list(v);
  else if (key == "threads") {
    threads = to_int(key, v);
    if (threads < 1) throw ParameterError("threads must be >= 1");
  } else if (key == "exclude_margin") {
    exclude_margin = to_double(key, v);
    if (exclude_margin < 0) throw ParameterError("exclude_margin must be >= 0");
  } else if (key == "transition_eta_max") transition_eta_max = to_double(key, v);
  else throw ParameterError("unknown configuration key '" + key + "'");
}

DimensionlessParams RunConfig::resolve() const {
  DimensionlessParams p = to_dimensionless(si);
  if (eta) p.eta = *eta;
  if (delta_c) p.delta_c = *delta_c;
  if (gamma_motion) p.gamma_motion = *gamma_motion;
  if (d0_ratio) p = with_d0_ratio(p, *d0_ratio);
  p.hessian_source = hessian_source;
  p.local_frequency = local_frequency;
  p.validate();
  return p;
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParameterError("line " + std::to_string(lineno) + ": expected key = value");
    try {
      c.set(trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ParameterError& e) {
      throw ParameterError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParameterError("cannot open configuration file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

} // namespace ionchain
