#include "helpers.hpp"
#include "ionchain/modes.hpp"

#include <doctest.h>

#include <cmath>

using namespace ionchain;
using testutil::yb;

namespace {

// dDelta/dq_n by central differences along the mode vector
double coupling_fd(const ClassicalEquilibrium& eq, const ModeData& m, int n, const DimensionlessParams& p) {
  const double h = 1e-5;
  const IonConfiguration plus(eq.cfg.xi + h * m.M.col(n));
  const IonConfiguration minus(eq.cfg.xi - h * m.M.col(n));
  const double d = (delta_eff(plus, p) - delta_eff(minus, p)) / (2 * h);
  return -d / std::sqrt(2 * p.mu * m.omega_n(n));
}

} // namespace

TEST_CASE("bare Coulomb chain modes") {
  for (double d0 : {48.0, 50.6}) {
    const auto p = yb(d0);
    const auto eq = find_equilibria(p).equilibria.at(0);
    const auto m = normal_modes(eq, p);
    CHECK(m.omega_n(0) == doctest::Approx(p.omega).epsilon(1e-9));
    CHECK(m.omega_n(1) == doctest::Approx(std::sqrt(3.0) * p.omega).epsilon(1e-9));
    CHECK(m.omega_n(2) == doctest::Approx(std::sqrt(29.0 / 5.0) * p.omega).epsilon(1e-9));
    const Mat3 ref = reference_modes();
    CHECK((m.M - ref).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((m.M.transpose() * m.M - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    for (int n = 0; n < 3; ++n) CHECK(m.overlaps(n) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(m.c_n(0)) < 1e-12);
    CHECK(std::abs(m.c_n(2)) < 1e-12);
  }
}

TEST_CASE("couplings agree with finite differences of the detuning") {
  for (double d0 : {48.28, 48.99, 49.795})
    for (double eta : {5.0, 40.0, 200.0}) {
      const auto p = yb(d0, eta, -2);
      for (const auto& eq : find_equilibria(p).equilibria) {
        const auto m = normal_modes(eq, p);
        CHECK((m.M.transpose() * m.M - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12);
        for (int n = 0; n < 3; ++n) {
          CHECK(std::abs(m.c_n(n) - coupling_fd(eq, m, n, p)) <= 1e-6 * std::max(1e-3, std::abs(m.c_n(n))));
          CHECK(m.M.col(n).dot(reference_modes().col(n)) >= 0);
        }
        // ascending, eigen-equation of K/mu
        CHECK(m.omega_n(0) <= m.omega_n(1));
        CHECK(m.omega_n(1) <= m.omega_n(2));
        const Mat3 k = hessian(eq.cfg, p, p.hessian_source) / p.mu;
        for (int n = 0; n < 3; ++n)
          CHECK((k * m.M.col(n) - m.omega_n(n) * m.omega_n(n) * m.M.col(n)).norm() <= 1e-9 * k.norm());
      }
    }
}

TEST_CASE("symmetric equilibria couple only the stretch mode") {
  int seen = 0;
  for (double d0 : {48.0, 48.99, 50.6, 51.44})
    for (double eta : {1.0, 4.0, 9.0})
      for (double dc : {-8.0, -1.0}) {
        const auto p = yb(d0, eta, dc);
        const auto set = find_equilibria(p);
        const auto* s = set.symmetric();
        if (!s) continue;
        ++seen;
        const auto m = normal_modes(*s, p);
        CHECK(std::abs(m.c_n(0)) < 1e-10);
        CHECK(std::abs(m.c_n(2)) < 1e-10);
        CHECK(std::abs(m.overlaps(1) - 1.0) < 1e-12);
      }
  CHECK(seen > 10);
}

TEST_CASE("deep pinning at d0 = 48 favours the centre-of-mass coupling") {
  const auto p = yb(48, 400);
  const auto set = find_equilibria(p);
  const auto* eq = set.broken_left();
  REQUIRE(eq);
  const auto m = normal_modes(*eq, p);
  CHECK(std::abs(m.c_n(1)) < 0.1 * std::abs(m.c_n(0)));
  CHECK(std::abs(m.c_n(2)) < 0.1 * std::abs(m.c_n(0)));
}

TEST_CASE("mirror branches share frequencies and coupling magnitudes") {
  const auto p = yb(49.2, 60, -3);
  const auto set = find_equilibria(p);
  const ClassicalEquilibrium* l = nullptr;
  const ClassicalEquilibrium* r = nullptr;
  for (const auto& e : set.equilibria) {
    if (e.branch == Branch::BrokenLeft && !l) l = &e;
    if (e.branch == Branch::BrokenRight && !r) r = &e;
  }
  REQUIRE(l);
  REQUIRE(r);
  const auto ml = normal_modes(*l, p);
  const auto mr = normal_modes(*r, p);
  CHECK((ml.omega_n - mr.omega_n).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((ml.c_n.cwiseAbs() - mr.c_n.cwiseAbs()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("frozen and effective Hessian sources") {
  auto p = yb(49.5, 80, -2);
  const auto set = find_equilibria(p);
  REQUIRE(set.broken_left());
  const auto eq = *set.broken_left();
  const auto eff = normal_modes(eq, p);
  p.hessian_source = HessianSource::Frozen;
  const auto fro = normal_modes(eq, p);
  const Mat3 diff = hessian(eq.cfg, p, HessianSource::Effective) - hessian(eq.cfg, p, HessianSource::Frozen);
  CHECK(eff.omega_n.squaredNorm() - fro.omega_n.squaredNorm() ==
        doctest::Approx(diff.trace() / p.mu).epsilon(1e-8));
  CHECK((eff.omega_n - fro.omega_n).cwiseAbs().maxCoeff() > 0);
}
