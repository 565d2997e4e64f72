#pragma once

#include "ionchain/gaussian.hpp"

#include <array>
#include <string>
#include <vector>

namespace ionchain {

/// Smallest partially transposed symplectic eigenvalue must sit this far
/// below 1/2 to count as NPT.
inline constexpr double kNptThreshold = 1e-9;

/// Logarithmic negativity (natural log) across side_a | rest. One of the two
/// sides must be a single mode; throws std::invalid_argument otherwise.
double log_negativity(const GaussianState& state, const std::vector<int>& side_a);

/// Smallest symplectic eigenvalue of the state partially transposed on side_b.
double min_pt_symplectic_eigenvalue(const GaussianState& state, const std::vector<int>& side_b);

/// h(nu) = (nu + 1/2) ln(nu + 1/2) - (nu - 1/2) ln(nu - 1/2).
double entropy_function(double nu);
double von_neumann_entropy(const GaussianState& state);

/// I(A:B) = S(A) + S(B) - S(AB) in nats. A and B are disjoint mode sets; the
/// remaining modes are traced out.
double mutual_information(const GaussianState& state, const std::vector<int>& side_a,
                          const std::vector<int>& side_b);

enum class TripartiteClass { GenuineTripartite, BiseparableOneCut, BiseparableTwoCuts, AllCutsPPT };
std::string to_string(TripartiteClass c);

/// Classification of a 3-mode state by the number of NPT 1|2 cuts.
TripartiteClass tripartite_class(const GaussianState& three_mode);
int npt_cut_count(const GaussianState& three_mode);

inline constexpr double kVlBound = 2.0;

struct VlResult {
  std::array<double, 6> lhs{};      // inequalities I..VI
  std::array<bool, 6> violated{};   // lhs < 2 - 1e-9
};

/// The six four-mode separability inequalities, pairs
/// I(1,2) II(2,3) III(1,3) IV(3,4) V(2,4) VI(1,4) in the state's mode order.
VlResult vl_witness(const GaussianState& four_mode, const std::array<double, 4>& g);

enum class FourPartite { Certified, Inconclusive };
std::string to_string(FourPartite f);

/// Mode order (cavity, ion1, ion2, ion3). Certified iff some uniform g in the
/// list violates II and IV together and E_N(cavity | ions) > 1e-9.
FourPartite fourpartite_certify(const GaussianState& four_mode, const std::vector<double>& g_list);

/// 16 evenly spaced values in [-1, 1] followed by 0.1.
std::vector<double> default_g_list();

inline constexpr double kDefaultG = 0.1;

/// All pairs (i<j) of a 4-mode state, in lexicographic order:
/// (0,1) (0,2) (0,3) (1,2) (1,3) (2,3).
inline constexpr std::array<std::array<int, 2>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

struct EntanglementReport {
  std::array<double, 6> pair_neg{};        // E_N of the two-mode reduction, kPairs order
  std::array<double, 4> one_vs_rest_neg{}; // E_N(mode k | other three)
  std::array<double, 6> mutual_info{};     // kPairs order
  std::array<TripartiteClass, 4> tripartite{TripartiteClass::AllCutsPPT, TripartiteClass::AllCutsPPT,
                                           TripartiteClass::AllCutsPPT,
                                           TripartiteClass::AllCutsPPT};  // mode k traced out
  std::vector<double> g_list;
  std::vector<VlResult> vl;                // one entry per g
  FourPartite fourpartite = FourPartite::Inconclusive;
};

/// Which parts of the report to fill; skipped fields stay zero.
struct ReportOptions {
  bool pairs = true;
  bool one_vs_rest = true;
  bool mutual_info = true;
  bool tripartite = true;
  bool witnesses = true;  // vl entries and fourpartite
};

EntanglementReport entanglement_report(const GaussianState& four_mode,
                                       const std::vector<double>& g_list = default_g_list(),
                                       const ReportOptions& opt = {});

} // namespace ionchain
