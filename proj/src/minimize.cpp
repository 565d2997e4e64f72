#include "ionchain/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ionchain {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxStep = 0.5;  // x0; keeps a single step inside one optical well
constexpr double kArmijo = 1e-4;

double safe_value(const Vec3& x, const DimensionlessParams& p) {
  IonConfiguration c(x);
  if (!c.ordered()) return kInf;
  return v_tot(c, p);
}

Mat3 scaled_identity(const Mat3& h) {
  const double s = std::max(h.diagonal().cwiseAbs().maxCoeff(), 1.0);
  return Mat3::Identity() / s;
}

// Newton steps while the Hessian stays positive definite and the gradient
// keeps shrinking. Used once BFGS stalls on round-off in v_tot.
void newton_polish(Vec3& x, const DimensionlessParams& p, const MinimizeOptions& opt, int& iters) {
  for (int k = 0; k < opt.newton_polish_iterations; ++k) {
    const Vec3 g = gradient(IonConfiguration(x), p);
    if (g.norm() < opt.gradient_tolerance) return;
    Eigen::LLT<Mat3> llt(hessian(IonConfiguration(x), p));
    if (llt.info() != Eigen::Success) return;
    const Vec3 xn = x - llt.solve(g);
    if (!IonConfiguration(xn).ordered()) return;
    if (!(gradient(IonConfiguration(xn), p).norm() < g.norm())) return;
    x = xn;
    ++iters;
  }
}

} // namespace

double gradient_floor(const IonConfiguration& cfg, const DimensionlessParams& p) {
  const Mat3 h = hessian(cfg, p);
  const double hnorm = h.cwiseAbs().rowwise().sum().maxCoeff();
  return 4.0 * hnorm * std::numeric_limits<double>::epsilon() * cfg.xi.cwiseAbs().maxCoeff();
}

bool stationary(const IonConfiguration& cfg, double gradient_norm, const DimensionlessParams& p,
                const MinimizeOptions& opt) {
  if (gradient_norm < opt.gradient_tolerance) return true;
  return gradient_norm < std::max(opt.stall_tolerance, gradient_floor(cfg, p));
}

MinimizeResult minimize_potential(const IonConfiguration& seed, const DimensionlessParams& p,
                                  const MinimizeOptions& opt) {
  MinimizeResult res;
  res.cfg = seed;
  if (!seed.ordered()) {
    res.message = "seed is not strictly ordered";
    return res;
  }

  Vec3 x = seed.xi;
  Vec3 g = gradient(seed, p);
  const Mat3 h0 = hessian(seed, p);
  Mat3 hinv;
  if (Eigen::LLT<Mat3> llt(h0); llt.info() == Eigen::Success) {
    hinv = llt.solve(Mat3::Identity());
  } else {
    hinv = scaled_identity(h0);
  }

  int it = 0;
  double f = safe_value(x, p);
  for (; it < opt.max_iterations; ++it) {
    if (g.norm() < opt.gradient_tolerance) break;
    Vec3 d = -hinv * g;
    if (g.dot(d) >= 0) {
      hinv = scaled_identity(hessian(IonConfiguration(x), p));
      d = -hinv * g;
    }
    const double dmax = d.cwiseAbs().maxCoeff();
    if (dmax > kMaxStep) d *= kMaxStep / dmax;

    const double slope = g.dot(d);
    double t = 1.0;
    bool accepted = false;
    Vec3 xn;
    double fn = kInf;
    for (int ls = 0; ls < 60; ++ls) {
      xn = x + t * d;
      fn = safe_value(xn, p);
      if (fn <= f + kArmijo * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;  // round-off floor of v_tot reached

    const Vec3 gn = gradient(IonConfiguration(xn), p);
    const Vec3 s = xn - x;
    const Vec3 y = gn - g;
    const double sy = s.dot(y);
    if (sy > 0) {
      const double rho = 1.0 / sy;
      const Mat3 id = Mat3::Identity();
      hinv = (id - rho * s * y.transpose()) * hinv * (id - rho * y * s.transpose()) +
             rho * s * s.transpose();
    }
    const bool tiny = s.cwiseAbs().maxCoeff() < 1e-14 * x.cwiseAbs().maxCoeff();
    x = xn;
    g = gn;
    f = fn;
    if (tiny) break;
  }

  newton_polish(x, p, opt, it);

  res.cfg = IonConfiguration(x);
  res.gradient_norm = gradient(res.cfg, p).norm();
  res.iterations = it;
  res.converged = stationary(res.cfg, res.gradient_norm, p, opt);
  if (!res.converged) res.message = "gradient tolerance not reached";
  return res;
}

MinimizeResult minimize_symmetric(double half_spacing_seed, const DimensionlessParams& p,
                                  const MinimizeOptions& opt) {
  MinimizeResult res;
  if (!(half_spacing_seed > 0)) {
    res.message = "symmetric seed needs a positive half spacing";
    return res;
  }
  auto cfg_of = [](double d) { return IonConfiguration(-d, 0.0, d); };
  // F(d) = v_tot(-d, 0, d); F' = g2 - g0; F'' = H00 + H22 - 2 H02.
  auto first = [&](double d) {
    const Vec3 g = gradient(cfg_of(d), p);
    return g(2) - g(0);
  };
  auto value = [&](double d) { return d > 0 ? v_tot(cfg_of(d), p) : kInf; };

  double d = half_spacing_seed;
  double f = value(d);
  double fp = first(d);
  int it = 0;
  for (; it < opt.max_iterations + opt.newton_polish_iterations; ++it) {
    if (std::abs(fp) / std::sqrt(2.0) < opt.gradient_tolerance) break;
    const Mat3 h = hessian(cfg_of(d), p);
    const double fpp = h(0, 0) + h(2, 2) - 2.0 * h(0, 2);
    double step = fpp > 0 ? -fp / fpp : (fp > 0 ? -kMaxStep : kMaxStep);
    if (std::abs(step) > kMaxStep) step = std::copysign(kMaxStep, step);

    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      const double dn = d + t * step;
      const double fn = value(dn);
      if (fn <= f + kArmijo * t * step * fp) {
        d = dn;
        f = fn;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      // v_tot round-off: accept a pure Newton step if it shrinks |F'|.
      const double dn = d + step;
      if (fpp > 0 && dn > 0 && std::abs(first(dn)) < std::abs(fp)) {
        d = dn;
        f = value(d);
      } else {
        break;
      }
    }
    fp = first(d);
  }

  res.cfg = cfg_of(d);
  res.gradient_norm = gradient(res.cfg, p).norm();
  res.iterations = it;
  res.converged = stationary(res.cfg, res.gradient_norm, p, opt);
  if (!res.converged) res.message = "gradient tolerance not reached";
  return res;
}

} // namespace ionchain
