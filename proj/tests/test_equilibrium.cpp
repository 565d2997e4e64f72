#include "helpers.hpp"
#include "ionchain/dynamics.hpp"
#include "ionchain/validity.hpp"

#include <doctest.h>

#include <cmath>

using namespace ionchain;
using testutil::yb;

namespace {

void check_invariants(const EquilibriumSet& set, const DimensionlessParams& p) {
  for (const auto& e : set.equilibria) {
    CHECK(e.hessian_pd);
    CHECK(e.min_hessian_eigenvalue > 0);
    CHECK(e.cfg.ordered());
    CHECK(stationary(e.cfg, gradient(e.cfg, p).norm(), p));
    CHECK(std::abs(e.photon_number - p.eta * p.eta / (1 + e.delta_bar * e.delta_bar)) <=
          1e-12 * std::max(1.0, e.photon_number));
    CHECK(std::abs(std::norm(e.a_bar) - e.photon_number) <= 1e-12 * std::max(1.0, e.photon_number));
    const bool sym = std::abs(e.cfg.xi(1)) < 1e-9 && std::abs(e.cfg.xi(0) + e.cfg.xi(2)) < 1e-9;
    CHECK(sym == (e.branch == Branch::Symmetric));
    if (e.branch == Branch::BrokenLeft) CHECK(e.cfg.xi(1) < -1e-9);
    if (e.branch == Branch::Symmetric) CHECK(e.f_bar >= 1.0);
  }
  // every left solution has an exact right partner
  for (const auto& l : set.equilibria) {
    if (l.branch != Branch::BrokenLeft) continue;
    bool found = false;
    for (const auto& r : set.equilibria) {
      if (r.branch != Branch::BrokenRight) continue;
      if ((r.cfg.xi - l.cfg.mirrored().xi).cwiseAbs().maxCoeff() > 1e-9) continue;
      found = true;
      CHECK(std::abs(r.v_tot - l.v_tot) <= 1e-9 * std::abs(l.v_tot));
      CHECK(std::abs(r.f_bar - l.f_bar) < 1e-9);
      CHECK(std::abs(r.photon_number - l.photon_number) < 1e-9);
    }
    CHECK(found);
  }
  // listing order: symmetric, left, right
  int stage = 0;
  for (const auto& e : set.equilibria) {
    const int s = static_cast<int>(e.branch);
    CHECK(s >= stage);
    stage = s;
  }
}

} // namespace

TEST_CASE("bare chain equilibrium") {
  for (double d0 : {48.0, 49.795, 51.44}) {
    const auto p = yb(d0);
    const auto set = find_equilibria(p);
    REQUIRE(set.equilibria.size() == 1);
    const auto& e = set.equilibria[0];
    CHECK(e.branch == Branch::Symmetric);
    // force balance on the outer ion: mu w^2 d = gamma_C (1/d^2 + 1/(2d)^2)
    const double d = std::cbrt(1.25 * p.gamma_coul / (p.mu * p.omega * p.omega));
    CHECK(std::abs(e.cfg.xi(0) + d) < 1e-9);
    CHECK(std::abs(e.cfg.xi(1)) < 1e-9);
    CHECK(std::abs(e.cfg.xi(2) - d) < 1e-9);
    check_invariants(set, p);
  }
}

TEST_CASE("deep pinning at d0 = 49.795") {
  const auto p = yb(49.795, 400);
  const auto set = find_equilibria(p);
  check_invariants(set, p);
  CHECK_FALSE(set.has(Branch::Symmetric));
  REQUIRE(set.broken_left());
  CHECK(set.has(Branch::BrokenRight));
  const auto s = classify_structure(*set.broken_left(), p);
  CHECK(s.structure == Structure::Uniform);
  CHECK(s.gap_difference < 0.01);
}

TEST_CASE("structure classification") {
  SUBCASE("matching d0 = 48") {
    const auto p = yb(48, 400);
    const auto s = classify_structure(*find_equilibria(p).broken_left(), p);
    CHECK(s.structure == Structure::Uniform);
    CHECK(std::abs(s.gap_left - 24) < 1e-3);
    CHECK(std::abs(s.gap_right - 24) < 1e-3);
    CHECK(s.matching_metric == doctest::Approx(0.0).epsilon(1e-9));
  }
  SUBCASE("maximally mismatched d0 = 49") {
    const auto p = yb(49, 400);
    const auto s = classify_structure(*find_equilibria(p).broken_left(), p);
    CHECK(s.structure == Structure::Defect);
    CHECK(std::abs(s.gap_difference - 1.0) < 0.05);
    CHECK(s.matching_metric == doctest::Approx(1.0));
  }
  SUBCASE("symmetric input is rejected") {
    const auto p = yb(49);
    CHECK_THROWS_AS(classify_structure(find_equilibria(p).equilibria[0], p), std::invalid_argument);
  }
}

TEST_CASE("transition boundaries") {
  const auto uni = transition_boundaries(yb(49.795), 0, 100);
  CHECK(uni.bistable);
  CHECK(uni.eta_pin_min < uni.eta_sym_max);

  const auto def = transition_boundaries(yb(49), 0, 100);
  CHECK_FALSE(def.bistable);
  CHECK(std::abs(def.eta_sym_max - def.eta_pin_min) < 1e-3);

  CHECK(uni.eta_pin_min < def.eta_pin_min);
  CHECK(transition_boundaries(yb(48), 0, 100).eta_pin_min < def.eta_pin_min);

  // both branches inside the window
  const double mid = 0.5 * (uni.eta_pin_min + uni.eta_sym_max);
  const auto set = find_equilibria(yb(49.795, mid));
  check_invariants(set, yb(49.795, mid));
  CHECK(set.has(Branch::Symmetric));
  CHECK(set.has(Branch::BrokenLeft));
  CHECK(set.has(Branch::BrokenRight));

  CHECK_THROWS_AS(transition_boundaries(yb(49.795), 0, 1), BracketingError);
  CHECK_THROWS_AS(transition_boundaries(yb(49.795), 5, 2), BracketingError);
}

TEST_CASE("pinned localisation grows with the pump") {
  double last = 4;
  for (double eta = 30; eta <= 400; eta += 10) {
    const auto p = yb(49.795, eta);
    const auto set = find_equilibria(p);
    const auto* e = set.broken_left();
    REQUIRE(e);
    CHECK(e->f_bar < last);
    last = e->f_bar;
  }
}

TEST_CASE("invariants across a parameter sample") {
  for (double d0 : {47.3, 48.28, 48.99, 50.6, 51.44})
    for (double eta : {3.0, 15.0, 40.0, 120.0})
      for (double dc : {-9.0, -2.0, -0.1}) {
        const auto p = yb(d0, eta, dc);
        check_invariants(find_equilibria(p), p);
      }
}

TEST_CASE("continuation seeds are used") {
  const auto p = yb(49, 400);
  const auto base = find_equilibria(p);
  const IonConfiguration far(-53, -3, 45);
  const auto more = find_equilibria(p, {far, far.mirrored()});
  CHECK(more.equilibria.size() >= base.equilibria.size());
  CHECK(more.broken_left()->v_tot <= base.broken_left()->v_tot);
}

TEST_CASE("validity energy check") {
  SUBCASE("bare chain: the shift relaxes back") {
    const auto p = yb(50);
    const auto eq = find_equilibria(p).equilibria[0];
    const auto modes = normal_modes(eq, p);
    const auto st = steady_state_covariance(build_linear_model(eq, modes, p));
    const auto v = validity_energy_check(eq, st, modes, p);
    CHECK(v.degenerate_shift);
    CHECK(v.barrier == 0.0);
    CHECK_FALSE(v.warning.empty());
  }
  SUBCASE("deep pinned chain near d0 = 50") {
    for (double dc : {-1.0, -4.0}) {
      const auto p = yb(50, 300, dc);
      const auto set = find_equilibria(p);
      REQUIRE(set.broken_left());
      const auto eq = *set.broken_left();
      const auto modes = normal_modes(eq, p);
      const auto model = build_linear_model(eq, modes, p);
      REQUIRE(model.stable);
      const auto v = validity_energy_check(eq, steady_state_covariance(model), modes, p);
      CHECK(v.barrier >= 0);
      CHECK(v.valid);
      CHECK(v.e_vib > 0);
    }
  }
}
