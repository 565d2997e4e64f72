#include "ionchain/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace ionchain {

std::string to_string(Axis a) {
  switch (a) {
    case Axis::Eta: return "eta";
    case Axis::DeltaC: return "delta_c";
    case Axis::D0Ratio: return "d0_ratio";
    case Axis::Cooperativity: return "cooperativity";
  }
  return "?";
}

Axis parse_axis(const std::string& s) {
  if (s == "eta") return Axis::Eta;
  if (s == "delta_c") return Axis::DeltaC;
  if (s == "d0_ratio" || s == "d0") return Axis::D0Ratio;
  if (s == "cooperativity" || s == "C") return Axis::Cooperativity;
  throw ParameterError("unknown axis '" + s + "' (eta, delta_c, d0_ratio, cooperativity)");
}

double AxisRange::value(int i) const {
  if (i == count - 1) return max;
  return min + (max - min) * i / (count - 1);
}

AxisRange parse_axis_range(const std::string& s) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = s.find(':', start);
    parts.push_back(s.substr(start, colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 4) throw ParameterError("grid must look like axis:min:max:count, got '" + s + "'");
  AxisRange r;
  r.axis = parse_axis(parts[0]);
  try {
    std::size_t u1 = 0, u2 = 0, u3 = 0;
    r.min = std::stod(parts[1], &u1);
    r.max = std::stod(parts[2], &u2);
    r.count = std::stoi(parts[3], &u3);
    if (u1 != parts[1].size() || u2 != parts[2].size() || u3 != parts[3].size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw ParameterError("malformed grid '" + s + "'");
  }
  return r;
}

std::string to_string(BranchPolicy b) { return b == BranchPolicy::All ? "all" : "prefer_broken_left"; }

BranchPolicy parse_branch_policy(const std::string& s) {
  if (s == "all") return BranchPolicy::All;
  if (s == "prefer_broken_left") return BranchPolicy::PreferBrokenLeft;
  throw ParameterError("branch_policy must be 'prefer_broken_left' or 'all', got '" + s + "'");
}

std::string to_string(PointStatus s) {
  switch (s) {
    case PointStatus::Ok: return "ok";
    case PointStatus::NoEquilibrium: return "no_equilibrium";
    case PointStatus::HessianUnstable: return "hessian_unstable";
    case PointStatus::DynamicallyUnstable: return "dynamically_unstable";
    case PointStatus::NumericalFailure: return "numerical_failure";
  }
  return "?";
}

void ScanGrid::validate() const {
  fixed.validate();
  if (axes.empty() || axes.size() > 3) throw ParameterError("a scan needs one to three axes");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const auto& a = axes[i];
    if (a.count < 2) throw ParameterError("axis " + to_string(a.axis) + " needs count >= 2");
    if (!std::isfinite(a.min) || !std::isfinite(a.max)) throw ParameterError("axis range must be finite");
    for (std::size_t j = 0; j < i; ++j)
      if (axes[j].axis == a.axis) throw ParameterError("axis " + to_string(a.axis) + " given twice");
    const double lo = std::min(a.min, a.max);
    if (a.axis == Axis::Eta && lo < 0) throw ParameterError("eta axis must be >= 0");
    if ((a.axis == Axis::D0Ratio || a.axis == Axis::Cooperativity) && lo <= 0)
      throw ParameterError("axis " + to_string(a.axis) + " must be > 0");
  }
  if (g_list.empty()) throw ParameterError("g_list is empty");
  if (threads < 1) throw ParameterError("threads must be >= 1");
}

std::vector<AxisRange> ScanGrid::ordered_axes() const {
  std::vector<AxisRange> out;
  for (const auto& a : axes)
    if (a.axis != Axis::Eta) out.push_back(a);
  for (const auto& a : axes)
    if (a.axis == Axis::Eta) out.push_back(a);
  return out;
}

std::size_t ScanGrid::size() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= static_cast<std::size_t>(a.count);
  return n;
}

std::size_t ScanGrid::column_length() const {
  for (const auto& a : axes)
    if (a.axis == Axis::Eta) return static_cast<std::size_t>(a.count);
  return 1;
}

std::size_t ScanResult::failures() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(),
                                                [](const PointRecord& r) { return r.status != PointStatus::Ok; }));
}

namespace {

std::vector<double> coords_of(const ScanGrid& grid, std::size_t index) {
  const auto axes = grid.ordered_axes();
  std::vector<double> c(axes.size());
  for (std::size_t k = axes.size(); k-- > 0;) {
    const auto n = static_cast<std::size_t>(axes[k].count);
    c[k] = axes[k].value(static_cast<int>(index % n));
    index /= n;
  }
  return c;
}

DimensionlessParams apply(const DimensionlessParams& base, const std::vector<AxisRange>& axes,
                          const std::vector<double>& c) {
  DimensionlessParams p = base;
  for (std::size_t k = 0; k < axes.size(); ++k) {
    switch (axes[k].axis) {
      case Axis::Eta: p.eta = c[k]; break;
      case Axis::DeltaC: p.delta_c = c[k]; break;
      case Axis::D0Ratio: p = with_d0_ratio(p, c[k]); break;
      case Axis::Cooperativity: p = p.with_cooperativity(c[k]); break;
    }
  }
  return p;
}

PointRecord base_record(const DimensionlessParams& p) {
  PointRecord r;
  r.eta = p.eta;
  r.delta_c = p.delta_c;
  r.d0_ratio = d0_from_omega(p);
  r.cooperativity = p.c_coop;
  return r;
}

void fill(PointRecord& r, const ClassicalEquilibrium& eq, const DimensionlessParams& p, const ScanWork& work,
          const std::vector<double>& g_list) {
  r.eq = eq;
  if (eq.branch != Branch::Symmetric) r.structure = classify_structure(eq, p);
  if (!work.modes) return;
  try {
    r.modes = normal_modes(eq, p);
  } catch (const UnstableConfigurationError& e) {
    r.status = PointStatus::HessianUnstable;
    r.message = e.what();
    return;
  }
  if (!work.steady_state) return;
  const LinearModel model = build_linear_model(eq, *r.modes, p);
  r.max_real_eigenvalue = model.max_real_eigenvalue;
  r.stable = model.stable;
  if (!model.stable) {
    r.status = PointStatus::DynamicallyUnstable;
    r.message = "drift matrix not Hurwitz";
    return;
  }
  try {
    GaussianState s = steady_state_covariance(model);
    r.lyapunov_residual = lyapunov_residual(model.A, s.sigma, model.D);
    r.physicality_margin = physicality_margin(s.sigma);
    if (work.mode_report) r.mode_report = entanglement_report(s, g_list, work.report);
    if (work.local_report) r.local_report = entanglement_report(to_local_basis(s, *r.modes, p), g_list, work.report);
    r.state = std::move(s);
  } catch (const std::exception& e) {
    r.status = PointStatus::NumericalFailure;
    r.message = e.what();
  }
}

} // namespace

DimensionlessParams point_params(const ScanGrid& grid, std::size_t index) {
  return apply(grid.fixed, grid.ordered_axes(), coords_of(grid, index));
}

std::vector<PointRecord> evaluate_point(const DimensionlessParams& p, BranchPolicy policy, const ScanWork& work,
                                        const std::vector<double>& g_list,
                                        std::vector<IonConfiguration>* seeds) {
  EquilibriumSet set;
  try {
    set = find_equilibria(p, seeds ? *seeds : std::vector<IonConfiguration>{});
  } catch (const std::exception& e) {
    PointRecord r = base_record(p);
    r.status = PointStatus::NoEquilibrium;
    r.message = e.what();
    if (seeds) seeds->clear();
    return {r};
  }
  if (seeds) {
    seeds->clear();
    for (const auto& e : set.equilibria)
      if (e.branch != Branch::BrokenRight) seeds->push_back(e.cfg);
  }

  std::vector<const ClassicalEquilibrium*> chosen;
  if (policy == BranchPolicy::All) {
    for (const auto& e : set.equilibria) chosen.push_back(&e);
  } else {
    chosen.push_back(set.broken_left() ? set.broken_left() : set.symmetric());
  }

  std::vector<PointRecord> out;
  for (const auto* eq : chosen) {
    PointRecord r = base_record(p);
    r.has_symmetric = set.has(Branch::Symmetric);
    r.has_broken = set.has(Branch::BrokenLeft);
    r.n_equilibria = static_cast<int>(set.equilibria.size());
    r.bistable = r.has_symmetric && r.has_broken;
    r.seed_failures = static_cast<int>(set.failures.size());
    if (eq) fill(r, *eq, p, work, g_list);
    out.push_back(std::move(r));
  }
  return out;
}

ScanResult run_scan(const ScanGrid& grid) {
  grid.validate();
  const auto axes = grid.ordered_axes();
  const std::size_t len = grid.column_length();
  const std::size_t columns = grid.size() / len;
  const bool has_eta = len > 1;

  ScanResult result;
  result.grid = grid;
  result.windows.resize(columns);
  std::vector<std::vector<PointRecord>> per_column(columns);

  auto run_column = [&](std::size_t col) {
    ColumnWindow& w = result.windows[col];
    if (grid.work.transitions) {
      const DimensionlessParams pc = point_params(grid, col * len);
      double eta_max = pc.eta;
      if (has_eta) eta_max = std::max(axes.back().min, axes.back().max);
      if (grid.transition_eta_max) eta_max = *grid.transition_eta_max;
      w.computed = true;
      try {
        w.bounds = transition_boundaries(pc, 0.0, eta_max);
        w.bracketed = true;
      } catch (const std::exception& e) {
        w.message = e.what();
      }
    }
    std::vector<IonConfiguration> seeds;
    for (std::size_t k = 0; k < len; ++k) {
      const std::size_t index = col * len + k;
      const auto c = coords_of(grid, index);
      const DimensionlessParams p = apply(grid.fixed, axes, c);
      auto recs = evaluate_point(p, grid.policy, grid.work, grid.g_list, has_eta ? &seeds : nullptr);
      for (auto& r : recs) {
        r.index = index;
        r.coords = c;
        r.in_window = w.bracketed && w.bounds.bistable && p.eta >= w.bounds.eta_pin_min &&
                      p.eta <= w.bounds.eta_sym_max;
        per_column[col].push_back(std::move(r));
      }
    }
  };

  const int workers = static_cast<int>(std::min<std::size_t>(grid.threads, columns));
  if (workers <= 1) {
    for (std::size_t c = 0; c < columns; ++c) run_column(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < columns; c = next++) run_column(c);
      });
    for (auto& th : pool) th.join();
  }
  for (auto& v : per_column)
    for (auto& r : v) result.records.push_back(std::move(r));
  return result;
}

std::vector<MaxEntanglementRecord> max_entanglement_map(const ScanResult& result, double exclude_margin) {
  const auto& grid = result.grid;
  const std::size_t len = grid.column_length();
  if (len < 2) throw ParameterError("max_entanglement_map needs an eta axis");
  const std::size_t columns = grid.size() / len;
  std::vector<MaxEntanglementRecord> out(columns);
  for (std::size_t c = 0; c < columns; ++c) {
    auto coords = coords_of(grid, c * len);
    coords.pop_back();
    out[c].coords = coords;
    out[c].argmax_eta_mode.fill(std::numeric_limits<double>::quiet_NaN());
    out[c].argmax_eta_local.fill(std::numeric_limits<double>::quiet_NaN());
  }
  for (const auto& r : result.records) {
    const std::size_t c = r.index / len;
    const ColumnWindow& w = result.windows[c];
    if (r.status != PointStatus::Ok || !r.mode_report) continue;
    if (r.bistable) continue;
    if (w.bracketed && w.bounds.bistable && r.eta >= w.bounds.eta_pin_min - exclude_margin &&
        r.eta <= w.bounds.eta_sym_max + exclude_margin)
      continue;
    if (w.bracketed && !w.bounds.bistable && exclude_margin > 0 &&
        std::abs(r.eta - 0.5 * (w.bounds.eta_pin_min + w.bounds.eta_sym_max)) <= exclude_margin)
      continue;
    auto& m = out[c];
    ++m.admissible;
    for (int i = 0; i < 6; ++i) {
      const double vm = r.mode_report->pair_neg[i];
      const double vl = r.local_report ? r.local_report->pair_neg[i] : 0.0;
      if (std::isnan(m.argmax_eta_mode[i]) || vm > m.mode_pairs[i]) {
        m.mode_pairs[i] = vm;
        m.argmax_eta_mode[i] = r.eta;
      }
      if (std::isnan(m.argmax_eta_local[i]) || vl > m.local_pairs[i]) {
        m.local_pairs[i] = vl;
        m.argmax_eta_local[i] = r.eta;
      }
    }
    for (int k = 0; k < 4; ++k) {
      m.mode_one_vs_rest[k] = std::max(m.mode_one_vs_rest[k], r.mode_report->one_vs_rest_neg[k]);
      if (r.local_report) m.local_one_vs_rest[k] = std::max(m.local_one_vs_rest[k], r.local_report->one_vs_rest_neg[k]);
    }
  }
  for (auto& m : out) m.flagged = m.admissible == 0;
  return out;
}

std::vector<ResonancePoint> resonance_overlay(const ScanResult& result) {
  const auto axes = result.grid.ordered_axes();
  if (axes.size() != 2 || axes[0].axis != Axis::DeltaC || axes[1].axis != Axis::Eta)
    throw ParameterError("resonance_overlay needs an (eta, delta_c) grid");
  const int nd = axes[0].count;
  const int ne = axes[1].count;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  // One value per grid point: the broken-left record if any, else the first.
  std::vector<std::array<double, 3>> field(result.grid.size(), {nan, nan, nan});
  std::vector<bool> from_broken(result.grid.size(), false);
  std::vector<int> branch(result.grid.size(), -1);
  for (const auto& r : result.records) {
    if (!r.eq || !r.modes) continue;
    const bool broken = r.eq->branch == Branch::BrokenLeft;
    if (!std::isnan(field[r.index][0]) && (from_broken[r.index] || !broken)) continue;
    for (int j = 0; j < 3; ++j) field[r.index][j] = r.eq->delta_bar + r.modes->omega_n(j);
    from_broken[r.index] = broken;
    branch[r.index] = static_cast<int>(r.eq->branch);
  }
  std::vector<ResonancePoint> out;
  for (int j = 0; j < 3; ++j) {
    auto at = [&](int id, int ie) { return field[static_cast<std::size_t>(id) * ne + ie][j]; };
    // no interpolation across a jump between branches
    auto same = [&](int id0, int ie0, int id1, int ie1) {
      return branch[static_cast<std::size_t>(id0) * ne + ie0] == branch[static_cast<std::size_t>(id1) * ne + ie1];
    };
    for (int id = 0; id < nd; ++id)
      for (int ie = 0; ie < ne; ++ie) {
        const double f0 = at(id, ie);
        if (std::isnan(f0)) continue;
        if (f0 == 0.0) {
          out.push_back({j + 1, axes[1].value(ie), axes[0].value(id)});
          continue;
        }
        if (ie + 1 < ne) {
          const double f1 = at(id, ie + 1);
          if (!std::isnan(f1) && f0 * f1 < 0 && same(id, ie, id, ie + 1)) {
            const double t = f0 / (f0 - f1);
            const double e0 = axes[1].value(ie);
            out.push_back({j + 1, e0 + t * (axes[1].value(ie + 1) - e0), axes[0].value(id)});
          }
        }
        if (id + 1 < nd) {
          const double f1 = at(id + 1, ie);
          if (!std::isnan(f1) && f0 * f1 < 0 && same(id, ie, id + 1, ie)) {
            const double t = f0 / (f0 - f1);
            const double d0 = axes[0].value(id);
            out.push_back({j + 1, axes[1].value(ie), d0 + t * (axes[0].value(id + 1) - d0)});
          }
        }
      }
  }
  return out;
}

} // namespace ionchain
