#pragma once

#include "ionchain/dynamics.hpp"
#include "ionchain/entanglement.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ionchain {

enum class Axis { Eta, DeltaC, D0Ratio, Cooperativity };
std::string to_string(Axis a);
Axis parse_axis(const std::string& s);

struct AxisRange {
  Axis axis = Axis::Eta;
  double min = 0.0;
  double max = 0.0;
  int count = 2;

  double value(int i) const;
};

/// "axis:min:max:count", e.g. "eta:0:400:201".
AxisRange parse_axis_range(const std::string& s);

enum class BranchPolicy { PreferBrokenLeft, All };
std::string to_string(BranchPolicy b);
BranchPolicy parse_branch_policy(const std::string& s);

/// What each grid point computes beyond the equilibria.
struct ScanWork {
  bool modes = true;
  bool steady_state = true;
  bool mode_report = true;
  bool local_report = true;
  ReportOptions report;
  bool transitions = true;  // per-column bistable window
};

struct ScanGrid {
  DimensionlessParams fixed;
  /// One to three axes. The eta axis, if present, is always iterated
  /// innermost; the others keep their order (first = slowest).
  std::vector<AxisRange> axes;
  BranchPolicy policy = BranchPolicy::PreferBrokenLeft;
  std::vector<double> g_list = default_g_list();
  ScanWork work;
  /// Upper end of the eta range searched for the transition in each column.
  /// Defaults to the eta axis maximum (or fixed.eta without an eta axis).
  std::optional<double> transition_eta_max;
  int threads = 1;

  /// Throws ParameterError on counts < 2, non-finite ranges, repeated or
  /// too many axes.
  void validate() const;
  /// Axes in iteration order (eta last).
  std::vector<AxisRange> ordered_axes() const;
  std::size_t size() const;
  /// Point count of one column (the innermost eta sweep, or 1).
  std::size_t column_length() const;
};

/// Transition window cached per column.
struct ColumnWindow {
  bool computed = false;
  bool bracketed = false;
  TransitionBoundaries bounds;
  std::string message;
};

enum class PointStatus { Ok, NoEquilibrium, HessianUnstable, DynamicallyUnstable, NumericalFailure };
std::string to_string(PointStatus s);

struct PointRecord {
  std::size_t index = 0;         // grid index
  std::vector<double> coords;    // in ordered_axes() order
  double eta = 0.0;
  double delta_c = 0.0;
  double d0_ratio = 0.0;
  double cooperativity = 0.0;

  PointStatus status = PointStatus::Ok;
  std::string message;

  bool has_symmetric = false;
  bool has_broken = false;
  int n_equilibria = 0;
  bool bistable = false;         // symmetric and broken solutions coexist here
  bool in_window = false;        // eta inside the column's closed bistable window
  int seed_failures = 0;

  std::optional<ClassicalEquilibrium> eq;  // the reported branch
  std::optional<StructureInfo> structure;  // broken branches only
  std::optional<ModeData> modes;
  double max_real_eigenvalue = 0.0;
  bool stable = false;
  double lyapunov_residual = 0.0;
  double physicality_margin = 0.0;
  std::optional<GaussianState> state;      // mode basis
  std::optional<EntanglementReport> mode_report;
  std::optional<EntanglementReport> local_report;
};

struct ScanResult {
  ScanGrid grid;
  std::vector<PointRecord> records;       // grid order; several per point with BranchPolicy::All
  std::vector<ColumnWindow> windows;      // one per column
  std::size_t failures() const;
};

/// Full per-point pipeline for one parameter set. `seeds` are continuation
/// seeds; on return they hold the equilibria found here.
std::vector<PointRecord> evaluate_point(const DimensionlessParams& p, BranchPolicy policy,
                                        const ScanWork& work, const std::vector<double>& g_list,
                                        std::vector<IonConfiguration>* seeds = nullptr);

/// Parameters of grid point `index`.
DimensionlessParams point_params(const ScanGrid& grid, std::size_t index);

ScanResult run_scan(const ScanGrid& grid);

/// One entry per outer point (grid with the eta axis collapsed).
struct MaxEntanglementRecord {
  std::vector<double> coords;          // outer axes, ordered_axes() order without eta
  int admissible = 0;                  // eta points used
  bool flagged = false;                // no admissible eta
  std::array<double, 6> mode_pairs{};  // max over eta, kPairs order, mode basis
  std::array<double, 4> mode_one_vs_rest{};
  std::array<double, 6> local_pairs{};
  std::array<double, 4> local_one_vs_rest{};
  std::array<double, 6> argmax_eta_mode{};
  std::array<double, 6> argmax_eta_local{};
};

/// Max over eta excluding [eta_pin_min - margin, eta_sym_max + margin] for
/// bistable columns, and any point where both branches coexist.
std::vector<MaxEntanglementRecord> max_entanglement_map(const ScanResult& result,
                                                        double exclude_margin = 0.0);

/// Zero crossings of delta_eff + omega_j on an (eta, delta_c) grid, one
/// polyline point per crossing found along either axis.
struct ResonancePoint {
  int mode = 0;  // 1..3
  double eta = 0.0;
  double delta_c = 0.0;
};
std::vector<ResonancePoint> resonance_overlay(const ScanResult& result);

} // namespace ionchain
