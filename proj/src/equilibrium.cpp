#include "ionchain/equilibrium.hpp"

#include <algorithm>
#include <cmath>

namespace ionchain {

std::string to_string(Branch b) {
  switch (b) {
    case Branch::Symmetric: return "symmetric";
    case Branch::BrokenLeft: return "broken_left";
    case Branch::BrokenRight: return "broken_right";
  }
  return "?";
}

std::string to_string(Structure s) { return s == Structure::Uniform ? "uniform" : "defect"; }

const ClassicalEquilibrium* EquilibriumSet::symmetric() const {
  for (const auto& e : equilibria)
    if (e.branch == Branch::Symmetric) return &e;
  return nullptr;
}

const ClassicalEquilibrium* EquilibriumSet::broken_left() const {
  for (const auto& e : equilibria)
    if (e.branch == Branch::BrokenLeft) return &e;
  return nullptr;
}

bool EquilibriumSet::has(Branch b) const {
  return std::any_of(equilibria.begin(), equilibria.end(),
                     [b](const ClassicalEquilibrium& e) { return e.branch == b; });
}

namespace {

Branch branch_of(const IonConfiguration& c) {
  const double mid = c.xi(1);
  const double ends = c.xi(0) + c.xi(2);
  if (std::abs(mid) < kSymmetryTolerance && std::abs(ends) < kSymmetryTolerance)
    return Branch::Symmetric;
  if (mid < -kSymmetryTolerance) return Branch::BrokenLeft;
  if (mid > kSymmetryTolerance) return Branch::BrokenRight;
  return ends < 0 ? Branch::BrokenLeft : Branch::BrokenRight;
}

Structure structure_of(const IonConfiguration& c) {
  const double left = (c.xi(1) - c.xi(0)) / 2.0;
  const double right = (c.xi(2) - c.xi(1)) / 2.0;
  return std::abs(right - left) < 0.5 ? Structure::Uniform : Structure::Defect;
}

// Odd integer sites within one optical period (2 x0) of v.
std::vector<double> odd_sites_near(double v) {
  std::vector<double> out;
  const double first = 2.0 * std::floor((v - 2.0 - 1.0) / 2.0) + 1.0;
  for (double k = first; k <= v + 2.0; k += 2.0)
    if (std::abs(k - v) <= 2.0) out.push_back(k);
  return out;
}

constexpr double kDedupTolerance = 1e-6;

bool same_config(const IonConfiguration& a, const IonConfiguration& b) {
  return (a.xi - b.xi).cwiseAbs().maxCoeff() < kDedupTolerance;
}

} // namespace

ClassicalEquilibrium make_equilibrium(const IonConfiguration& cfg, const DimensionlessParams& p) {
  ClassicalEquilibrium e;
  e.cfg = cfg;
  e.delta_bar = delta_eff(cfg, p);
  e.a_bar = p.eta / std::complex<double>(1.0, -e.delta_bar);
  e.photon_number = p.eta * p.eta / (1.0 + e.delta_bar * e.delta_bar);
  e.f_bar = f_bar(cfg);
  e.v_tot = v_tot(cfg, p);
  e.branch = branch_of(cfg);
  e.structure = e.branch == Branch::Symmetric ? Structure::Uniform : structure_of(cfg);
  e.gradient_norm = gradient(cfg, p).norm();
  Eigen::SelfAdjointEigenSolver<Mat3> es(hessian(cfg, p), Eigen::EigenvaluesOnly);
  e.min_hessian_eigenvalue = es.eigenvalues()(0);
  e.hessian_pd = e.min_hessian_eigenvalue > 0;
  return e;
}

EquilibriumSet find_equilibria(const DimensionlessParams& p,
                               const std::vector<IonConfiguration>& extra_seeds,
                               const MinimizeOptions& opt) {
  p.validate();
  EquilibriumSet out;
  const double d0 = d0_from_omega(p);

  std::vector<ClassicalEquilibrium> sym;
  std::vector<ClassicalEquilibrium> left;

  auto accept = [&](const MinimizeResult& r, const IonConfiguration& seed) {
    if (!r.converged) {
      out.failures.push_back({seed, r.message});
      return;
    }
    IonConfiguration c = r.cfg;
    if (branch_of(c) == Branch::BrokenRight) c = c.mirrored();
    ClassicalEquilibrium e = make_equilibrium(c, p);
    if (!e.hessian_pd) {
      out.failures.push_back({seed, "converged to a stationary point without positive-definite Hessian"});
      return;
    }
    auto& bucket = e.branch == Branch::Symmetric ? sym : left;
    for (const auto& k : bucket)
      if (same_config(k.cfg, e.cfg)) return;
    bucket.push_back(e);
  };

  {
    const IonConfiguration seed(-d0, 0.0, d0);
    accept(minimize_symmetric(d0, p, opt), seed);
  }

  std::vector<IonConfiguration> seeds;
  for (double a : odd_sites_near(-d0))
    for (double b : odd_sites_near(d0)) seeds.emplace_back(a, -1.0, b);
  for (const auto& s : extra_seeds) {
    if (!s.ordered()) continue;
    seeds.push_back(branch_of(s) == Branch::BrokenRight ? s.mirrored() : s);
  }
  for (const auto& s : seeds) accept(minimize_potential(s, p, opt), s);

  std::stable_sort(left.begin(), left.end(), [](const auto& a, const auto& b) {
    if (a.v_tot != b.v_tot) return a.v_tot < b.v_tot;
    return std::lexicographical_compare(a.cfg.xi.data(), a.cfg.xi.data() + 3, b.cfg.xi.data(),
                                        b.cfg.xi.data() + 3);
  });

  for (const auto& e : sym) out.equilibria.push_back(e);
  for (const auto& e : left) out.equilibria.push_back(e);
  for (const auto& e : left) out.equilibria.push_back(make_equilibrium(e.cfg.mirrored(), p));

  if (out.equilibria.empty()) throw EquilibriumError("no stable equilibrium found");
  return out;
}

StructureInfo classify_structure(const ClassicalEquilibrium& eq, const DimensionlessParams& p) {
  if (eq.branch == Branch::Symmetric)
    throw std::invalid_argument("classify_structure needs a pinned (broken) equilibrium");
  StructureInfo s;
  const auto& x = eq.cfg.xi;
  s.gap_left = (x(1) - x(0)) / 2.0;
  s.gap_right = (x(2) - x(1)) / 2.0;
  s.gap_difference = std::abs(s.gap_right - s.gap_left);
  s.structure = s.gap_difference < 0.5 ? Structure::Uniform : Structure::Defect;
  s.matching_metric = std::fmod(d0_from_omega(p), 2.0);
  return s;
}

TransitionBoundaries transition_boundaries(const DimensionlessParams& p, double eta_lo,
                                           double eta_hi, double tol) {
  if (!(eta_lo >= 0 && eta_hi > eta_lo)) throw BracketingError("invalid eta range");
  auto at = [&](double eta) {
    DimensionlessParams q = p;
    q.eta = eta;
    return find_equilibria(q);
  };
  const auto lo = at(eta_lo);
  const auto hi = at(eta_hi);
  const bool sym_lo = lo.has(Branch::Symmetric);
  const bool sym_hi = hi.has(Branch::Symmetric);
  const bool pin_lo = lo.has(Branch::BrokenLeft);
  const bool pin_hi = hi.has(Branch::BrokenLeft);
  if (!sym_lo || sym_hi || pin_lo || !pin_hi)
    throw BracketingError("eta range does not bracket the sliding-pinned transition");

  auto bisect = [&](auto exists_above) {
    double a = eta_lo, b = eta_hi;  // predicate false at a, true at b
    while (b - a > tol) {
      const double m = 0.5 * (a + b);
      (exists_above(at(m)) ? b : a) = m;
    }
    return std::pair{a, b};
  };

  TransitionBoundaries t;
  // Symmetric solution exists below eta_sym_max: predicate "no symmetric".
  const auto [sa, sb] = bisect([](const EquilibriumSet& s) { return !s.has(Branch::Symmetric); });
  t.eta_sym_max = sa;
  const auto [pa, pb] = bisect([](const EquilibriumSet& s) { return s.has(Branch::BrokenLeft); });
  t.eta_pin_min = pb;
  t.bistable = t.eta_sym_max - t.eta_pin_min > kBistableMinWidth;
  return t;
}

} // namespace ionchain
