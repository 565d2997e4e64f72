#include "ionchain/potential.hpp"

#include <cmath>
#include <numbers>

namespace ionchain {

namespace {

constexpr double kPi = std::numbers::pi;

// xi reduced to [-1, 1] modulo the optical period; the subtraction is exact.
double wrap(double xi) { return xi - 2.0 * std::nearbyint(xi / 2.0); }

void check_separation(const IonConfiguration& cfg) {
  for (int j = 0; j + 1 < kIons; ++j) {
    if (!(cfg.xi(j + 1) > cfg.xi(j))) {
      throw DivergenceError("ion positions must be strictly increasing");
    }
  }
}

// Derivatives of atan(-delta) scaled by eta^2.
struct OpticalFactor {
  double first;   // -eta^2 / (1 + d^2)
  double second;  // 2 eta^2 d / (1 + d^2)^2
};

OpticalFactor optical_factor(double delta, double eta) {
  const double s = 1.0 + delta * delta;
  const double e2 = eta * eta;
  return {-e2 / s, 2.0 * e2 * delta / (s * s)};
}

} // namespace

double f_bar(const IonConfiguration& cfg) {
  double s = 0.0;
  for (int j = 0; j < kIons; ++j) {
    const double c = std::cos(kPi * wrap(cfg.xi(j)) / 2.0);
    s += c * c;
  }
  return s;
}

double delta_eff(const IonConfiguration& cfg, const DimensionlessParams& p) {
  return p.delta_c - p.u0 * f_bar(cfg);
}

Vec3 delta_eff_gradient(const IonConfiguration& cfg, const DimensionlessParams& p) {
  // d/dxi cos^2(pi xi/2) = -(pi/2) sin(pi xi)
  Vec3 g;
  for (int j = 0; j < kIons; ++j) g(j) = p.u0 * (kPi / 2.0) * std::sin(kPi * wrap(cfg.xi(j)));
  return g;
}

double v_optical(const IonConfiguration& cfg, const DimensionlessParams& p) {
  return p.eta * p.eta * std::atan(-delta_eff(cfg, p));
}

double v_ion(const IonConfiguration& cfg, const DimensionlessParams& p) {
  check_separation(cfg);
  const double trap = 0.5 * p.mu * p.omega * p.omega * cfg.xi.squaredNorm();
  double coul = 0.0;
  for (int j = 0; j < kIons; ++j)
    for (int k = j + 1; k < kIons; ++k) coul += 1.0 / (cfg.xi(k) - cfg.xi(j));
  return trap + p.gamma_coul * coul;
}

double v_tot(const IonConfiguration& cfg, const DimensionlessParams& p) {
  return v_optical(cfg, p) + v_ion(cfg, p);
}

Vec3 gradient(const IonConfiguration& cfg, const DimensionlessParams& p) {
  check_separation(cfg);
  const double d = delta_eff(cfg, p);
  const auto of = optical_factor(d, p.eta);
  Vec3 g = of.first * delta_eff_gradient(cfg, p);
  const double k_trap = p.mu * p.omega * p.omega;
  for (int j = 0; j < kIons; ++j) {
    g(j) += k_trap * cfg.xi(j);
    for (int k = 0; k < kIons; ++k) {
      if (k == j) continue;
      const double r = cfg.xi(j) - cfg.xi(k);
      // d/dxi_j of 1/|xi_j - xi_k| = -sign(r)/r^2
      g(j) -= p.gamma_coul * (r > 0 ? 1.0 : -1.0) / (r * r);
    }
  }
  return g;
}

Mat3 hessian(const IonConfiguration& cfg, const DimensionlessParams& p, HessianSource source) {
  check_separation(cfg);
  const double d = delta_eff(cfg, p);
  const auto of = optical_factor(d, p.eta);
  const Vec3 dd = delta_eff_gradient(cfg, p);

  Mat3 h = Mat3::Zero();
  for (int j = 0; j < kIons; ++j) {
    const double d2 = p.u0 * (kPi * kPi / 2.0) * std::cos(kPi * wrap(cfg.xi(j)));
    h(j, j) += of.first * d2;
  }
  if (source == HessianSource::Effective) h += of.second * dd * dd.transpose();

  const double k_trap = p.mu * p.omega * p.omega;
  for (int j = 0; j < kIons; ++j) {
    h(j, j) += k_trap;
    for (int k = 0; k < kIons; ++k) {
      if (k == j) continue;
      const double r = std::abs(cfg.xi(j) - cfg.xi(k));
      const double c = 2.0 * p.gamma_coul / (r * r * r);
      h(j, j) += c;
      h(j, k) -= c;
    }
  }
  return h;
}

} // namespace ionchain
