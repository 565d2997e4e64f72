#include "ionchain/output.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <ostream>

#ifndef IONCHAIN_VERSION
#define IONCHAIN_VERSION "dev"
#endif

namespace ionchain {

std::string version() { return IONCHAIN_VERSION; }

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string pair_label(int i) { return std::to_string(kPairs[i][0]) + std::to_string(kPairs[i][1]); }

const char* kRoman[6] = {"I", "II", "III", "IV", "V", "VI"};

std::string traced_label(int k) {
  std::string s;
  for (int j = 0; j < 4; ++j)
    if (j != k) s += std::to_string(j);
  return s;
}

// vl entry at g closest to kDefaultG.
const VlResult* default_vl(const EntanglementReport& rep) {
  const VlResult* best = nullptr;
  double dist = 1e300;
  for (std::size_t i = 0; i < rep.g_list.size() && i < rep.vl.size(); ++i)
    if (std::abs(rep.g_list[i] - kDefaultG) < dist) {
      dist = std::abs(rep.g_list[i] - kDefaultG);
      best = &rep.vl[i];
    }
  return best;
}

bool any_ii_iv(const EntanglementReport& rep) {
  for (const auto& v : rep.vl)
    if (v.violated[1] && v.violated[3]) return true;
  return false;
}

void report_columns(std::vector<std::string>& cols, const std::string& b) {
  for (int i = 0; i < 6; ++i) cols.push_back("en_" + b + "_" + pair_label(i));
  for (int k = 0; k < 4; ++k) cols.push_back("en_" + b + "_" + std::to_string(k) + "_rest");
  for (int i = 0; i < 6; ++i) cols.push_back("mi_" + b + "_" + pair_label(i));
  for (int k = 0; k < 4; ++k) cols.push_back("tri_" + b + "_" + traced_label(k));
  for (int i = 0; i < 6; ++i) cols.push_back("vl_" + b + "_" + kRoman[i]);
  cols.push_back("vl_" + b + "_II_IV");
  cols.push_back("fourpartite_" + b);
}

void report_cells(std::vector<Cell>& row, const std::optional<EntanglementReport>& rep) {
  if (!rep) {
    for (int i = 0; i < 6 + 4 + 6; ++i) row.emplace_back(kNaN);
    for (int k = 0; k < 4; ++k) row.emplace_back(std::string());
    for (int i = 0; i < 6; ++i) row.emplace_back(kNaN);
    row.emplace_back(std::string());
    row.emplace_back(std::string());
    return;
  }
  for (double v : rep->pair_neg) row.emplace_back(v);
  for (double v : rep->one_vs_rest_neg) row.emplace_back(v);
  for (double v : rep->mutual_info) row.emplace_back(v);
  for (auto c : rep->tripartite) row.emplace_back(to_string(c));
  const VlResult* vl = default_vl(*rep);
  for (int i = 0; i < 6; ++i) row.emplace_back(vl ? vl->lhs[i] : kNaN);
  if (rep->vl.empty()) {
    row.emplace_back(std::string());
    row.emplace_back(std::string());
  } else {
    row.emplace_back(any_ii_iv(*rep));
    row.emplace_back(to_string(rep->fourpartite));
  }
}

nlohmann::json to_json(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    return *d;
  }
  if (const long long* i = std::get_if<long long>(&c)) return *i;
  if (const bool* b = std::get_if<bool>(&c)) return *b;
  return std::get<std::string>(c);
}

} // namespace

std::string format_cell(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return num(*d);
  if (const long long* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const bool* b = std::get_if<bool>(&c)) return *b ? "1" : "0";
  return std::get<std::string>(c);
}

Metadata run_metadata(const DimensionlessParams& p, bool timestamp) {
  Metadata m = {
      {"version", version()},
      {"mu", num(p.mu)},
      {"gamma_coul", num(p.gamma_coul)},
      {"cooperativity", num(p.c_coop)},
      {"u0", num(p.u0)},
      {"delta_c", num(p.delta_c)},
      {"eta", num(p.eta)},
      {"omega", num(p.omega)},
      {"d0_ratio", num(d0_from_omega(p))},
      {"gamma_motion", num(p.gamma_motion)},
      {"n_thermal", num(p.n_thermal)},
      {"kx0", num(p.kx0)},
      {"hessian_source", to_string(p.hessian_source)},
      {"local_frequency", to_string(p.local_frequency)},
  };
  if (timestamp) {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    m.emplace_back("timestamp", buf);
  }
  return m;
}

Metadata scan_metadata(const ScanResult& r, bool timestamp) {
  Metadata m = run_metadata(r.grid.fixed, timestamp);
  for (const auto& a : r.grid.ordered_axes())
    m.emplace_back("grid", to_string(a.axis) + ":" + num(a.min) + ":" + num(a.max) + ":" + std::to_string(a.count));
  m.emplace_back("branch_policy", to_string(r.grid.policy));
  std::string g;
  for (double x : r.grid.g_list) g += (g.empty() ? "" : ",") + num(x);
  m.emplace_back("g_list", g);
  m.emplace_back("points", std::to_string(r.grid.size()));
  m.emplace_back("failures", std::to_string(r.failures()));
  return m;
}

void write_csv(std::ostream& out, const Metadata& meta, const Table& t) {
  for (const auto& [k, v] : meta) out << "# " << k << "=" << v << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
    out << "\n";
  }
}

void write_json(std::ostream& out, const Metadata& meta, const Table& t) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json m = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta) {
    if (m.contains(k)) {
      if (!m[k].is_array()) m[k] = nlohmann::ordered_json::array({m[k]});
      m[k].push_back(v);
    } else {
      m[k] = v;
    }
  }
  j["metadata"] = m;
  j["columns"] = t.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = to_json(row[i]);
    rows.push_back(obj);
  }
  j["records"] = rows;
  out << j.dump(1) << "\n";
}

Table scan_table(const ScanResult& r) {
  Table t;
  t.columns = {"index", "eta", "delta_c", "d0_ratio", "cooperativity", "status", "branch", "n_equilibria",
               "has_symmetric", "has_broken", "bistable", "in_window", "window_pin_min", "window_sym_max",
               "xi1", "xi2", "xi3", "f_bar", "photon_number", "delta_eff", "v_tot", "structure", "gap_left",
               "gap_right", "omega1", "omega2", "omega3", "c1", "c2", "c3", "overlap1", "overlap2", "overlap3",
               "max_re_eig", "stable", "lyapunov_residual", "physicality_margin"};
  report_columns(t.columns, "m");
  report_columns(t.columns, "l");
  t.columns.push_back("message");

  const std::size_t len = r.grid.column_length();
  for (const auto& p : r.records) {
    std::vector<Cell> row;
    const ColumnWindow& w = r.windows[p.index / len];
    row.emplace_back(static_cast<long long>(p.index));
    row.emplace_back(p.eta);
    row.emplace_back(p.delta_c);
    row.emplace_back(p.d0_ratio);
    row.emplace_back(p.cooperativity);
    row.emplace_back(to_string(p.status));
    row.emplace_back(p.eq ? to_string(p.eq->branch) : std::string());
    row.emplace_back(static_cast<long long>(p.n_equilibria));
    row.emplace_back(p.has_symmetric);
    row.emplace_back(p.has_broken);
    row.emplace_back(p.bistable);
    row.emplace_back(p.in_window);
    row.emplace_back(w.bracketed ? w.bounds.eta_pin_min : kNaN);
    row.emplace_back(w.bracketed ? w.bounds.eta_sym_max : kNaN);
    for (int i = 0; i < 3; ++i) row.emplace_back(p.eq ? p.eq->cfg.xi(i) : kNaN);
    row.emplace_back(p.eq ? p.eq->f_bar : kNaN);
    row.emplace_back(p.eq ? p.eq->photon_number : kNaN);
    row.emplace_back(p.eq ? p.eq->delta_bar : kNaN);
    row.emplace_back(p.eq ? p.eq->v_tot : kNaN);
    row.emplace_back(p.structure ? to_string(p.structure->structure) : std::string());
    row.emplace_back(p.structure ? p.structure->gap_left : kNaN);
    row.emplace_back(p.structure ? p.structure->gap_right : kNaN);
    for (int i = 0; i < 3; ++i) row.emplace_back(p.modes ? p.modes->omega_n(i) : kNaN);
    for (int i = 0; i < 3; ++i) row.emplace_back(p.modes ? p.modes->c_n(i) : kNaN);
    for (int i = 0; i < 3; ++i) row.emplace_back(p.modes ? p.modes->overlaps(i) : kNaN);
    row.emplace_back(p.state ? p.max_real_eigenvalue : kNaN);
    row.emplace_back(p.stable);
    row.emplace_back(p.state ? p.lyapunov_residual : kNaN);
    row.emplace_back(p.state ? p.physicality_margin : kNaN);
    report_cells(row, p.mode_report);
    report_cells(row, p.local_report);
    std::string msg = p.message;
    for (char& ch : msg)
      if (ch == ',' || ch == '\n') ch = ';';
    row.emplace_back(msg);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table max_entanglement_table(const ScanResult& r, const std::vector<MaxEntanglementRecord>& m) {
  Table t;
  auto axes = r.grid.ordered_axes();
  axes.pop_back();
  for (const auto& a : axes) t.columns.push_back(to_string(a.axis));
  t.columns.push_back("admissible");
  t.columns.push_back("flagged");
  t.columns.push_back("window_pin_min");
  t.columns.push_back("window_sym_max");
  t.columns.push_back("window_bistable");
  for (const char* b : {"m", "l"}) {
    for (int i = 0; i < 6; ++i) t.columns.push_back(std::string("max_en_") + b + "_" + pair_label(i));
    for (int k = 0; k < 4; ++k) t.columns.push_back(std::string("max_en_") + b + "_" + std::to_string(k) + "_rest");
    for (int i = 0; i < 6; ++i) t.columns.push_back(std::string("argmax_eta_") + b + "_" + pair_label(i));
  }
  for (std::size_t c = 0; c < m.size(); ++c) {
    const auto& e = m[c];
    const ColumnWindow& w = r.windows[c];
    std::vector<Cell> row;
    for (double x : e.coords) row.emplace_back(x);
    row.emplace_back(static_cast<long long>(e.admissible));
    row.emplace_back(e.flagged);
    row.emplace_back(w.bracketed ? w.bounds.eta_pin_min : kNaN);
    row.emplace_back(w.bracketed ? w.bounds.eta_sym_max : kNaN);
    row.emplace_back(w.bracketed && w.bounds.bistable);
    for (double v : e.mode_pairs) row.emplace_back(v);
    for (double v : e.mode_one_vs_rest) row.emplace_back(v);
    for (double v : e.argmax_eta_mode) row.emplace_back(v);
    for (double v : e.local_pairs) row.emplace_back(v);
    for (double v : e.local_one_vs_rest) row.emplace_back(v);
    for (double v : e.argmax_eta_local) row.emplace_back(v);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table window_table(const ScanResult& r) {
  Table t;
  auto axes = r.grid.ordered_axes();
  const std::size_t len = r.grid.column_length();
  if (len > 1) axes.pop_back();
  for (const auto& a : axes) t.columns.push_back(to_string(a.axis));
  for (const char* c : {"bracketed", "eta_pin_min", "eta_sym_max", "bistable", "message"}) t.columns.push_back(c);
  for (std::size_t c = 0; c < r.windows.size(); ++c) {
    const auto& w = r.windows[c];
    std::vector<Cell> row;
    const auto it = std::find_if(r.records.begin(), r.records.end(),
                                 [&](const PointRecord& p) { return p.index == c * len; });
    for (std::size_t k = 0; k < axes.size(); ++k) row.emplace_back(it != r.records.end() ? it->coords[k] : kNaN);
    row.emplace_back(w.bracketed);
    row.emplace_back(w.bracketed ? w.bounds.eta_pin_min : kNaN);
    row.emplace_back(w.bracketed ? w.bounds.eta_sym_max : kNaN);
    row.emplace_back(w.bracketed && w.bounds.bistable);
    std::string msg = w.message;
    for (char& ch : msg)
      if (ch == ',') ch = ';';
    row.emplace_back(msg);
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table resonance_table(const std::vector<ResonancePoint>& pts) {
  Table t;
  t.columns = {"mode", "eta", "delta_c"};
  for (const auto& p : pts) t.rows.push_back({static_cast<long long>(p.mode), p.eta, p.delta_c});
  return t;
}

Table equilibria_table(const EquilibriumSet& set, const DimensionlessParams& p) {
  Table t;
  t.columns = {"branch", "xi1", "xi2", "xi3", "f_bar", "photon_number", "delta_eff", "a_bar_re", "a_bar_im",
               "v_tot", "gradient_norm", "min_hessian_eig", "structure", "gap_left", "gap_right",
               "matching_metric"};
  for (const auto& e : set.equilibria) {
    std::vector<Cell> row{to_string(e.branch), e.cfg.xi(0), e.cfg.xi(1), e.cfg.xi(2), e.f_bar,
                          e.photon_number, e.delta_bar, e.a_bar.real(), e.a_bar.imag(), e.v_tot,
                          e.gradient_norm, e.min_hessian_eigenvalue};
    if (e.branch == Branch::Symmetric) {
      row.insert(row.end(), {std::string(), kNaN, kNaN, std::fmod(d0_from_omega(p), 2.0)});
    } else {
      const auto s = classify_structure(e, p);
      row.insert(row.end(), {to_string(s.structure), s.gap_left, s.gap_right, s.matching_metric});
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table modes_table(const EquilibriumSet& set, const DimensionlessParams& p) {
  Table t;
  t.columns = {"branch", "mode", "omega", "c", "overlap", "u1", "u2", "u3", "site_omega"};
  for (const auto& e : set.equilibria) {
    const ModeData m = normal_modes(e, p);
    for (int n = 0; n < kIons; ++n)
      t.rows.push_back({to_string(e.branch), static_cast<long long>(n + 1), m.omega_n(n), m.c_n(n),
                        m.overlaps(n), m.M(0, n), m.M(1, n), m.M(2, n), m.site_omega(n)});
  }
  return t;
}

Table covariance_table(const GaussianState& s) {
  Table t;
  t.columns.push_back("row");
  std::vector<std::string> names;
  for (int k = 0; k < s.modes(); ++k) {
    const std::string l = k < static_cast<int>(s.labels.size()) ? s.labels[k] : "mode" + std::to_string(k);
    names.push_back("x_" + l);
    names.push_back("p_" + l);
  }
  t.columns.insert(t.columns.end(), names.begin(), names.end());
  for (int i = 0; i < s.sigma.rows(); ++i) {
    std::vector<Cell> row{names[i]};
    for (int j = 0; j < s.sigma.cols(); ++j) row.emplace_back(s.sigma(i, j));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table report_table(const EntanglementReport& rep, const std::vector<std::string>& labels) {
  Table t;
  t.columns = {"quantity", "subsystems", "value"};
  auto name = [&](int k) { return k < static_cast<int>(labels.size()) ? labels[k] : std::to_string(k); };
  for (int i = 0; i < 6; ++i)
    t.rows.push_back({std::string("log_negativity"), name(kPairs[i][0]) + "|" + name(kPairs[i][1]), rep.pair_neg[i]});
  for (int k = 0; k < 4; ++k)
    t.rows.push_back({std::string("log_negativity"), name(k) + "|rest", rep.one_vs_rest_neg[k]});
  for (int i = 0; i < 6; ++i)
    t.rows.push_back({std::string("mutual_information"), name(kPairs[i][0]) + "|" + name(kPairs[i][1]),
                      rep.mutual_info[i]});
  for (int k = 0; k < 4; ++k) {
    std::string sub;
    for (int j = 0; j < 4; ++j)
      if (j != k) sub += (sub.empty() ? "" : "+") + name(j);
    t.rows.push_back({std::string("tripartite"), sub, to_string(rep.tripartite[k])});
  }
  for (std::size_t gi = 0; gi < rep.vl.size(); ++gi)
    for (int i = 0; i < 6; ++i)
      t.rows.push_back({std::string("vl_") + kRoman[i], "g=" + num(rep.g_list[gi]), rep.vl[gi].lhs[i]});
  t.rows.push_back({std::string("fourpartite"), std::string("all"), to_string(rep.fourpartite)});
  return t;
}

Table validity_table(const ValidityCheck& v, const ClassicalEquilibrium& eq) {
  Table t;
  t.columns = {"branch", "shift", "barrier", "e_vib", "valid", "degenerate_shift", "xi1_shifted", "xi2_shifted",
               "xi3_shifted", "warning"};
  t.rows.push_back({to_string(eq.branch), v.shift, v.barrier, v.e_vib, v.valid, v.degenerate_shift,
                    v.shifted_minimum.xi(0), v.shifted_minimum.xi(1), v.shifted_minimum.xi(2), v.warning});
  return t;
}

} // namespace ionchain
