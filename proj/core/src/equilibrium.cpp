#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "gba/error.hpp"
#include "gba/steady_state.hpp"

namespace gba {

namespace {

StateVector to_state(const Vector6& v) {
  return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

Vector6 to_vec(const StateVector& s) {
  Vector6 v;
  for (std::size_t i = 0; i < kStateDim; ++i) v[static_cast<Eigen::Index>(i)] = s[i];
  return v;
}

Matrix6 residual_jacobian(const ModelParameters& p, const CircadianDrive& drive,
                          const Vector6& x, double u) {
  Matrix6 J;
  for (Eigen::Index j = 0; j < 6; ++j) {
    const double h = std::max(1e-7, 1e-7 * std::abs(x[j]));
    Vector6 xp = x;
    Vector6 xm = x;
    xp[j] += h;
    xm[j] -= h;
    J.col(j) = (equilibrium_residual(p, drive, to_state(xp), u) -
                equilibrium_residual(p, drive, to_state(xm), u)) /
               (2.0 * h);
  }
  return J;
}

}  // namespace

Vector6 equilibrium_residual(const ModelParameters& p, const CircadianDrive& drive,
                             const StateVector& x, double u_star) {
  const StateVector d = detail::rhs_unchecked(x, {x, x}, u_star, drive.mean_level, p);
  return to_vec(d);
}

StateVector find_equilibrium(const ModelParameters& p, const CircadianDrive& drive,
                             double u_star, const EquilibriumOptions& opts) {
  p.validate();
  drive.validate();
  if (!std::isfinite(u_star) || u_star < 0.0) {
    throw InvalidArgument(fmt::format("equilibrium input u* must be >= 0 (got {})", u_star));
  }

  StateVector start;
  if (opts.start) {
    start = *opts.start;
  } else {
    IntegratorConfig cfg;
    cfg.step = opts.warmup_step;
    cfg.horizon = opts.warmup_minutes;
    cfg.output_spacing = opts.warmup_minutes;
    const TimeSeries ts = integrate(p, drive.frozen(), InputProfile::constant(u_star),
                                    opts.warmup_initial_state, cfg);
    start = ts.x.back();
  }

  Vector6 x = to_vec(start);
  Vector6 r = equilibrium_residual(p, drive, start, u_star);
  double best = r.lpNorm<Eigen::Infinity>();
  if (!std::isfinite(best)) best = std::numeric_limits<double>::infinity();

  for (int it = 0; it < opts.max_iterations; ++it) {
    const double rn = r.lpNorm<Eigen::Infinity>();
    if (rn <= opts.tolerance) {
      for (Eigen::Index i = 0; i < 6; ++i) {
        if (x[i] < -1e-12) {
          throw ConvergenceError(
              fmt::format("equilibrium at u* = {} has negative component {} = {} "
                          "(nonphysical root)",
                          u_star, kSpeciesNames[static_cast<std::size_t>(i)], x[i]),
              rn);
        }
        x[i] = std::max(x[i], 0.0);
      }
      return to_state(x);
    }
    const Matrix6 J = residual_jacobian(p, drive, x, u_star);
    const Vector6 dx = -J.fullPivLu().solve(r);
    if (!dx.allFinite()) break;

    double lambda = 1.0;
    bool accepted = false;
    for (int k = 0; k < 40; ++k, lambda *= 0.5) {
      const Vector6 trial = x + lambda * dx;
      const Vector6 rt = equilibrium_residual(p, drive, to_state(trial), u_star);
      if (rt.allFinite() && rt.norm() < r.norm()) {
        x = trial;
        r = rt;
        accepted = true;
        break;
      }
    }
    best = std::min(best, r.lpNorm<Eigen::Infinity>());
    if (!accepted) break;
  }
  throw ConvergenceError(
      fmt::format("equilibrium solve at u* = {} did not converge (best residual {:.3e})",
                  u_star, best),
      best);
}

}  // namespace gba
