#include "ionchain/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ionchain {

namespace {

std::vector<int> complement(int modes, const std::vector<int>& side) {
  std::vector<int> out;
  for (int k = 0; k < modes; ++k)
    if (std::find(side.begin(), side.end(), k) == side.end()) out.push_back(k);
  return out;
}

void check_partition(int modes, const std::vector<int>& side) {
  if (side.empty() || static_cast<int>(side.size()) >= modes)
    throw std::invalid_argument("bipartition needs two non-empty sides");
  for (int k : side)
    if (k < 0 || k >= modes) throw std::out_of_range("mode index out of range");
}

} // namespace

double min_pt_symplectic_eigenvalue(const GaussianState& state, const std::vector<int>& side_b) {
  return symplectic_eigenvalues(partial_transpose(state.sigma, side_b)).minCoeff();
}

double log_negativity(const GaussianState& state, const std::vector<int>& side_a) {
  const int k = state.modes();
  check_partition(k, side_a);
  const auto side_b = complement(k, side_a);
  if (side_a.size() != 1 && side_b.size() != 1)
    throw std::invalid_argument("log_negativity is only a faithful measure for 1 x N splits");
  require_physical(state.sigma);
  const Eigen::VectorXd nu = symplectic_eigenvalues(partial_transpose(state.sigma, side_b));
  double en = 0.0;
  for (double v : nu)
    if (v < 0.5) en -= std::log(2.0 * v);
  return en;
}

double entropy_function(double nu) {
  const double a = nu + 0.5;
  const double b = nu - 0.5;
  double h = a * std::log(a);
  if (b > 1e-300) h -= b * std::log(b);
  return h;
}

double von_neumann_entropy(const GaussianState& state) {
  double s = 0.0;
  for (double nu : symplectic_eigenvalues(state.sigma)) s += entropy_function(nu);
  return s;
}

double mutual_information(const GaussianState& state, const std::vector<int>& side_a,
                          const std::vector<int>& side_b) {
  if (side_a.empty() || side_b.empty()) throw std::invalid_argument("mutual_information needs non-empty sides");
  for (int a : side_a)
    if (std::find(side_b.begin(), side_b.end(), a) != side_b.end())
      throw std::invalid_argument("mutual_information sides overlap");
  require_physical(state.sigma);
  std::vector<int> both = side_a;
  both.insert(both.end(), side_b.begin(), side_b.end());
  const double i = von_neumann_entropy(reduce(state, side_a)) + von_neumann_entropy(reduce(state, side_b)) -
                   von_neumann_entropy(reduce(state, both));
  return std::max(i, 0.0);
}

std::string to_string(TripartiteClass c) {
  switch (c) {
    case TripartiteClass::GenuineTripartite: return "genuine_tripartite";
    case TripartiteClass::BiseparableOneCut: return "biseparable_one_cut";
    case TripartiteClass::BiseparableTwoCuts: return "biseparable_two_cuts";
    case TripartiteClass::AllCutsPPT: return "separable";
  }
  return "?";
}

int npt_cut_count(const GaussianState& three_mode) {
  if (three_mode.modes() != 3) throw std::invalid_argument("tripartite_class needs exactly 3 modes");
  require_physical(three_mode.sigma);
  int npt = 0;
  for (int k = 0; k < 3; ++k)
    if (min_pt_symplectic_eigenvalue(three_mode, {k}) < 0.5 - kNptThreshold) ++npt;
  return npt;
}

TripartiteClass tripartite_class(const GaussianState& three_mode) {
  switch (npt_cut_count(three_mode)) {
    case 3: return TripartiteClass::GenuineTripartite;
    case 2: return TripartiteClass::BiseparableOneCut;
    case 1: return TripartiteClass::BiseparableTwoCuts;
    default: return TripartiteClass::AllCutsPPT;
  }
}

VlResult vl_witness(const GaussianState& four_mode, const std::array<double, 4>& g) {
  if (four_mode.modes() != 4) throw std::invalid_argument("vl_witness needs exactly 4 modes");
  // Pair (a, b) for inequalities I..VI; the other two modes enter with g.
  static constexpr std::array<std::array<int, 2>, 6> pairs{{{0, 1}, {1, 2}, {0, 2}, {2, 3}, {1, 3}, {0, 3}}};
  const auto& s = four_mode.sigma;
  VlResult r;
  for (int i = 0; i < 6; ++i) {
    const int a = pairs[i][0];
    const int b = pairs[i][1];
    Eigen::Matrix<double, 8, 1> ux = Eigen::Matrix<double, 8, 1>::Zero();
    Eigen::Matrix<double, 8, 1> up = Eigen::Matrix<double, 8, 1>::Zero();
    ux(2 * a) = 1.0;
    ux(2 * b) = -1.0;
    for (int k = 0; k < 4; ++k) up(2 * k + 1) = (k == a || k == b) ? 1.0 : g[k];
    r.lhs[i] = ux.dot(s * ux) + up.dot(s * up);
    r.violated[i] = r.lhs[i] < kVlBound - kNptThreshold;
  }
  return r;
}

std::string to_string(FourPartite f) { return f == FourPartite::Certified ? "certified" : "inconclusive"; }

FourPartite fourpartite_certify(const GaussianState& four_mode, const std::vector<double>& g_list) {
  if (four_mode.modes() != 4) throw std::invalid_argument("fourpartite_certify needs exactly 4 modes");
  bool witnessed = false;
  for (double g : g_list) {
    const auto r = vl_witness(four_mode, {g, g, g, g});
    if (r.violated[1] && r.violated[3]) {
      witnessed = true;
      break;
    }
  }
  if (!witnessed) return FourPartite::Inconclusive;
  return log_negativity(four_mode, {0}) > kNptThreshold ? FourPartite::Certified : FourPartite::Inconclusive;
}

std::vector<double> default_g_list() {
  std::vector<double> g;
  for (int k = 0; k < 16; ++k) g.push_back(-1.0 + 2.0 * k / 15.0);
  g.push_back(kDefaultG);
  return g;
}

EntanglementReport entanglement_report(const GaussianState& four_mode, const std::vector<double>& g_list,
                                       const ReportOptions& opt) {
  if (four_mode.modes() != 4) throw std::invalid_argument("entanglement_report needs exactly 4 modes");
  require_physical(four_mode.sigma);
  EntanglementReport rep;
  for (int i = 0; i < 6; ++i) {
    const auto [a, b] = kPairs[i];
    if (opt.pairs) rep.pair_neg[i] = log_negativity(reduce(four_mode, {a, b}), {0});
    if (opt.mutual_info) rep.mutual_info[i] = mutual_information(four_mode, {a}, {b});
  }
  for (int k = 0; k < 4; ++k) {
    if (opt.one_vs_rest) rep.one_vs_rest_neg[k] = log_negativity(four_mode, {k});
    if (!opt.tripartite) continue;
    std::vector<int> keep;
    for (int j = 0; j < 4; ++j)
      if (j != k) keep.push_back(j);
    rep.tripartite[k] = tripartite_class(reduce(four_mode, keep));
  }
  if (!opt.witnesses) return rep;
  rep.g_list = g_list;
  for (double g : g_list) rep.vl.push_back(vl_witness(four_mode, {g, g, g, g}));
  rep.fourpartite = fourpartite_certify(four_mode, g_list);
  return rep;
}

} // namespace ionchain
