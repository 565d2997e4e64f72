// Command line front end: single-point diagnostics and parameter scans.

#include "ionchain/config.hpp"
#include "ionchain/output.hpp"
#include "ionchain/scan.hpp"
#include "ionchain/validity.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

using namespace ionchain;

namespace {

struct Common {
  std::string config;
  std::optional<double> eta, delta_c, d0_ratio, cooperativity, gamma, n_thermal;
  std::optional<std::string> hessian_source, local_frequency, branch_policy, g_list;
  std::vector<std::string> grid;
  std::string out;
  std::string format = "csv";
  std::optional<int> threads;
  std::optional<double> exclude_margin, eta_max;
  std::string resonance_out;
  std::string branch = "auto";
  std::string basis = "modes";
  bool no_timestamp = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "run configuration file (key = value)");
  sub->add_option("--eta", c.eta, "pump strength, units of kappa");
  sub->add_option("--delta-c", c.delta_c, "cavity detuning, units of kappa");
  sub->add_option("--d0-ratio", c.d0_ratio, "free ion spacing d0/x0 (sets the trap frequency)");
  sub->add_option("--cooperativity", c.cooperativity, "C = U0/kappa");
  sub->add_option("--gamma", c.gamma, "motional noise rate, units of kappa");
  sub->add_option("--n-thermal", c.n_thermal, "mean occupation of the motional noise");
  sub->add_option("--hessian-source", c.hessian_source, "effective | frozen");
  sub->add_option("--local-frequency", c.local_frequency, "site | trap");
  sub->add_option("--out", c.out, "output file (default stdout)");
  sub->add_option("--format", c.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--no-timestamp", c.no_timestamp, "omit the timestamp metadata line");
}

void add_scan_options(CLI::App* sub, Common& c) {
  sub->add_option("--grid", c.grid, "axis:min:max:count (repeatable; eta, delta_c, d0_ratio, cooperativity)");
  sub->add_option("--threads", c.threads, "worker threads");
  sub->add_option("--branch-policy", c.branch_policy, "prefer_broken_left | all");
  sub->add_option("--g-list", c.g_list, "comma separated witness gains");
  sub->add_option("--eta-max", c.eta_max, "upper eta for the transition search");
}

RunConfig build_config(const Common& c) {
  RunConfig cfg = c.config.empty() ? RunConfig{} : load_config(c.config);
  if (c.eta) cfg.eta = *c.eta;
  if (c.delta_c) cfg.delta_c = *c.delta_c;
  if (c.d0_ratio) cfg.d0_ratio = *c.d0_ratio;
  if (c.cooperativity) cfg.si.cooperativity = *c.cooperativity;
  if (c.gamma) cfg.gamma_motion = *c.gamma;
  if (c.n_thermal) cfg.si.n_thermal = *c.n_thermal;
  if (c.hessian_source) cfg.set("hessian_source", *c.hessian_source);
  if (c.local_frequency) cfg.set("local_frequency", *c.local_frequency);
  if (c.branch_policy) cfg.set("branch_policy", *c.branch_policy);
  if (c.g_list) cfg.set("g_list", *c.g_list);
  if (!c.grid.empty()) {
    cfg.grid.clear();
    for (const auto& g : c.grid) cfg.set("grid", g);
  }
  if (c.threads) cfg.set("threads", std::to_string(*c.threads));
  if (c.exclude_margin) cfg.exclude_margin = *c.exclude_margin;
  if (c.eta_max) cfg.transition_eta_max = *c.eta_max;
  return cfg;
}

void emit(const Common& c, const Metadata& meta, const Table& t) {
  std::ofstream file;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) throw ParameterError("cannot write '" + c.out + "'");
  }
  std::ostream& os = c.out.empty() ? std::cout : file;
  if (c.format == "json") write_json(os, meta, t);
  else write_csv(os, meta, t);
}

const ClassicalEquilibrium& pick(const EquilibriumSet& set, const std::string& branch) {
  const ClassicalEquilibrium* e = nullptr;
  if (branch == "auto") e = set.broken_left() ? set.broken_left() : set.symmetric();
  for (const auto& x : set.equilibria)
    if (!e && to_string(x.branch) == branch) e = &x;
  if (!e) throw ParameterError("no equilibrium on branch '" + branch + "'");
  return *e;
}

struct Single {
  DimensionlessParams p;
  EquilibriumSet set;
  const ClassicalEquilibrium* eq = nullptr;
  ModeData modes;
  LinearModel model;
  GaussianState state;
};

Single solve_point(const Common& c) {
  Single s;
  s.p = build_config(c).resolve();
  s.set = find_equilibria(s.p);
  s.eq = &pick(s.set, c.branch);
  s.modes = normal_modes(*s.eq, s.p);
  s.model = build_linear_model(*s.eq, s.modes, s.p);
  s.state = steady_state_covariance(s.model);
  return s;
}

ScanGrid make_grid(const RunConfig& cfg, std::vector<AxisRange> defaults, BranchPolicy default_policy) {
  ScanGrid g;
  g.fixed = cfg.resolve();
  g.axes = cfg.grid.empty() ? std::move(defaults) : cfg.grid;
  g.policy = cfg.branch_policy.value_or(default_policy);
  g.g_list = cfg.g_list;
  g.threads = cfg.threads;
  g.transition_eta_max = cfg.transition_eta_max;
  return g;
}

int finish(const Common& c, const ScanResult& r, const Table& t) {
  emit(c, scan_metadata(r, !c.no_timestamp), t);
  if (!c.resonance_out.empty()) {
    std::ofstream f(c.resonance_out);
    if (!f) throw ParameterError("cannot write '" + c.resonance_out + "'");
    write_csv(f, scan_metadata(r, !c.no_timestamp), resonance_table(resonance_overlay(r)));
  }
  if (r.failures() > 0) {
    std::cerr << r.failures() << " of " << r.records.size() << " records failed; see the status column\n";
    return 2;
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-ion chain in a pumped cavity: equilibria, modes and steady-state entanglement"};
  app.require_subcommand(1);
  Common c;
  int code = 0;

  auto* eq = app.add_subcommand("equilibrium", "all stable equilibria at one parameter point");
  add_common(eq, c);
  eq->callback([&] {
    const auto p = build_config(c).resolve();
    const auto set = find_equilibria(p);
    emit(c, run_metadata(p, !c.no_timestamp), equilibria_table(set, p));
  });

  auto* md = app.add_subcommand("modes", "normal modes, couplings and overlaps of every equilibrium");
  add_common(md, c);
  md->callback([&] {
    const auto p = build_config(c).resolve();
    emit(c, run_metadata(p, !c.no_timestamp), modes_table(find_equilibria(p), p));
  });

  auto* ss = app.add_subcommand("steady-state", "steady-state covariance matrix");
  add_common(ss, c);
  ss->add_option("--branch", c.branch, "auto | symmetric | broken_left | broken_right");
  ss->add_option("--basis", c.basis, "modes | local")->check(CLI::IsMember({"modes", "local"}));
  ss->callback([&] {
    const Single s = solve_point(c);
    auto meta = run_metadata(s.p, !c.no_timestamp);
    meta.emplace_back("branch", to_string(s.eq->branch));
    meta.emplace_back("lyapunov_residual", format_cell(lyapunov_residual(s.model.A, s.state.sigma, s.model.D)));
    meta.emplace_back("max_re_eig", format_cell(s.model.max_real_eigenvalue));
    emit(c, meta, covariance_table(c.basis == "local" ? to_local_basis(s.state, s.modes, s.p) : s.state));
  });

  auto* en = app.add_subcommand("entangle", "entanglement report at one parameter point");
  add_common(en, c);
  en->add_option("--branch", c.branch, "auto | symmetric | broken_left | broken_right");
  en->add_option("--basis", c.basis, "modes | local")->check(CLI::IsMember({"modes", "local"}));
  en->add_option("--g-list", c.g_list, "comma separated witness gains");
  en->callback([&] {
    const Single s = solve_point(c);
    const RunConfig cfg = build_config(c);
    const GaussianState st = c.basis == "local" ? to_local_basis(s.state, s.modes, s.p) : s.state;
    auto meta = run_metadata(s.p, !c.no_timestamp);
    meta.emplace_back("branch", to_string(s.eq->branch));
    meta.emplace_back("basis", c.basis);
    emit(c, meta, report_table(entanglement_report(st, cfg.g_list), st.labels));
  });

  auto* va = app.add_subcommand("validity", "energy barrier versus vibrational energy");
  add_common(va, c);
  va->add_option("--branch", c.branch, "auto | symmetric | broken_left | broken_right");
  va->callback([&] {
    const Single s = solve_point(c);
    const auto v = validity_energy_check(*s.eq, s.state, s.modes, s.p);
    if (!v.warning.empty()) std::cerr << "warning: " << v.warning << "\n";
    emit(c, run_metadata(s.p, !c.no_timestamp), validity_table(v, *s.eq));
  });

  auto* pd = app.add_subcommand("phase-diagram", "equilibria over a grid (f_bar, positions, branches)");
  add_common(pd, c);
  add_scan_options(pd, c);
  pd->add_option("--resonance-out", c.resonance_out, "also write delta_eff = -omega_j crossings");
  pd->callback([&] {
    ScanGrid g = make_grid(build_config(c), {parse_axis_range("eta:0:60:121")}, BranchPolicy::All);
    g.work.steady_state = false;
    g.work.modes = !c.resonance_out.empty();
    const auto r = run_scan(g);
    code = finish(c, r, scan_table(r));
  });

  auto* tl = app.add_subcommand("transition-lines", "critical pump strengths per column");
  add_common(tl, c);
  add_scan_options(tl, c);
  tl->callback([&] {
    RunConfig cfg = build_config(c);
    if (!cfg.transition_eta_max) cfg.transition_eta_max = 400.0;
    ScanGrid g = make_grid(cfg, {parse_axis_range("d0_ratio:47:53:61")}, BranchPolicy::PreferBrokenLeft);
    for (const auto& a : g.axes)
      if (a.axis == Axis::Eta) throw ParameterError("transition-lines scans eta internally; drop the eta axis");
    g.work.modes = g.work.steady_state = false;
    const auto r = run_scan(g);
    emit(c, scan_metadata(r, !c.no_timestamp), window_table(r));
    int unbracketed = 0;
    for (const auto& w : r.windows) unbracketed += !w.bracketed;
    if (unbracketed) {
      std::cerr << unbracketed << " columns without a bracketed transition\n";
      code = 2;
    }
  });

  auto* mx = app.add_subcommand("max-ent-map", "maximum over eta of the logarithmic negativities");
  add_common(mx, c);
  add_scan_options(mx, c);
  mx->add_option("--exclude-margin", c.exclude_margin, "widen the excluded bistable window (kappa)");
  mx->add_option("--resonance-out", c.resonance_out, "also write delta_eff = -omega_j crossings (delta_c x eta grids)");
  mx->callback([&] {
    const RunConfig cfg = build_config(c);
    ScanGrid g = make_grid(cfg,
                           {parse_axis_range("delta_c:-10:-0.1:50"), parse_axis_range("d0_ratio:47:53:50"),
                            parse_axis_range("eta:1:200:50")},
                           BranchPolicy::PreferBrokenLeft);
    g.work.report = {true, true, false, false, false};
    const auto r = run_scan(g);
    code = finish(c, r, max_entanglement_table(r, max_entanglement_map(r, cfg.exclude_margin)));
  });

  auto add_map = [&](const char* name, const char* help, double d0_default, ReportOptions rep) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, c);
    add_scan_options(sub, c);
    sub->add_option("--resonance-out", c.resonance_out, "also write delta_eff = -omega_j crossings");
    sub->callback([&, rep, d0_default] {
      RunConfig cfg = build_config(c);
      if (!cfg.d0_ratio) cfg.d0_ratio = d0_default;
      ScanGrid g = make_grid(cfg, {parse_axis_range("delta_c:-15:-0.1:200"), parse_axis_range("eta:2:300:200")},
                             BranchPolicy::PreferBrokenLeft);
      g.work.report = rep;
      const auto r = run_scan(g);
      code = finish(c, r, scan_table(r));
    });
  };
  add_map("tripartite-map", "tripartite classification of the ion reductions", 48.99, {true, true, false, true, false});
  add_map("fourpartite-map", "vL witnesses and four-partite certification", 48.28, {true, true, false, true, true});

  auto* ov = app.add_subcommand("overlap-map", "mode overlaps with the bare-chain modes");
  add_common(ov, c);
  add_scan_options(ov, c);
  ov->callback([&] {
    ScanGrid g = make_grid(build_config(c), {parse_axis_range("d0_ratio:47:53:100"), parse_axis_range("eta:0:100:100")},
                           BranchPolicy::PreferBrokenLeft);
    g.work.steady_state = false;
    const auto r = run_scan(g);
    code = finish(c, r, scan_table(r));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const ParameterError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return code;
}
