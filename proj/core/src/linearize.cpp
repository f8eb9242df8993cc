#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "gba/error.hpp"
#include "gba/steady_state.hpp"

namespace gba {

namespace {

constexpr double kStrayTolerance = 1e-8;

enum class Slot { Current, Hpa, Gut };

Vector6 eval(const ModelParameters& p, const StateVector& x, const DelayedView& dv, double u,
             double E) {
  const StateVector d = detail::rhs_unchecked(x, dv, u, E, p);
  Vector6 v;
  for (std::size_t i = 0; i < kStateDim; ++i) v[static_cast<Eigen::Index>(i)] = d[i];
  return v;
}

Matrix6 jacobian(const ModelParameters& p, const StateVector& xs, double u, double E,
                 Slot slot) {
  Matrix6 J;
  for (std::size_t j = 0; j < kStateDim; ++j) {
    const double h = std::max(1e-6, 1e-6 * std::abs(xs[j]));
    StateVector xp = xs, xm = xs;
    xp[j] += h;
    xm[j] -= h;
    Vector6 fp, fm;
    switch (slot) {
      case Slot::Current:
        fp = eval(p, xp, {xs, xs}, u, E);
        fm = eval(p, xm, {xs, xs}, u, E);
        break;
      case Slot::Hpa:
        fp = eval(p, xs, {xp, xs}, u, E);
        fm = eval(p, xs, {xm, xs}, u, E);
        break;
      case Slot::Gut:
        fp = eval(p, xs, {xs, xp}, u, E);
        fm = eval(p, xs, {xs, xm}, u, E);
        break;
    }
    J.col(static_cast<Eigen::Index>(j)) = (fp - fm) / (2.0 * h);
  }
  return J;
}

// Zeroes entries outside `allowed`, insisting they were numerically zero.
template <typename Mat, typename Pred>
void enforce_pattern(Mat& m, Pred allowed, const char* name) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (allowed(i, j)) continue;
      if (std::abs(m(i, j)) > kStrayTolerance) {
        throw Error(fmt::format("{} has a stray entry ({}, {}) = {:.3e}; delayed-argument "
                                "wiring is inconsistent with the model structure",
                                name, i, j, m(i, j)));
      }
      m(i, j) = 0.0;
    }
  }
}

constexpr Eigen::Index idx(Species s) { return static_cast<Eigen::Index>(index_of(s)); }

}  // namespace

double LinearizedSystem::dc_gain() const {
  const Vector6 v = J_sum().partialPivLu().solve(B);
  return -(C_out * v)(0, 0);
}

LinearizedSystem linearize(const ModelParameters& p, const CircadianDrive& drive,
                           const StateVector& x_star, double u_star) {
  p.validate();
  drive.validate();
  const double E = drive.mean_level;

  LinearizedSystem sys;
  sys.x_star = x_star;
  sys.u_star = u_star;
  sys.E_bar = E;
  sys.tau_hpa = p.tau_hpa;
  sys.tau_gut = p.tau_gut;
  sys.J0 = jacobian(p, x_star, u_star, E, Slot::Current);
  sys.J_hpa = jacobian(p, x_star, u_star, E, Slot::Hpa);
  sys.J_gut = jacobian(p, x_star, u_star, E, Slot::Gut);

  const double hu = std::max(1e-6, 1e-6 * std::abs(u_star));
  Vector6 B = (eval(p, x_star, {x_star, x_star}, u_star + hu, E) -
               eval(p, x_star, {x_star, x_star}, u_star - hu, E)) /
              (2.0 * hu);

  const auto A = idx(Species::A);
  const auto C = idx(Species::C);
  const auto L = idx(Species::L);
  const auto P = idx(Species::P);
  enforce_pattern(sys.J_hpa,
                  [&](Eigen::Index i, Eigen::Index j) {
                    return (i == A && j == C) || (i == C && j == A);
                  },
                  "J_hpa");
  enforce_pattern(sys.J_gut, [&](Eigen::Index i, Eigen::Index j) { return i == L && j == C; },
                  "J_gut");
  enforce_pattern(B, [&](Eigen::Index i, Eigen::Index) { return i == P; }, "B");
  // dP/dt is linear in u with slope L*.
  if (std::abs(B[P] - x_star.L) > 1e-8 * std::max(1.0, std::abs(x_star.L))) {
    throw Error(fmt::format("input column B[P] = {} disagrees with L* = {}", B[P], x_star.L));
  }
  B[P] = x_star.L;
  sys.B = B;
  return sys;
}

StabilityProbeResult probe_stability(const ModelParameters& p, const CircadianDrive& drive,
                                     const StateVector& x_star, double u_star,
                                     const StabilityProbeOptions& opts) {
  if (opts.spans < 2) throw InvalidArgument("stability probe needs at least two spans");
  std::mt19937 rng(opts.seed);
  std::bernoulli_distribution coin(0.5);
  StateVector x0 = x_star;
  std::array<double, kStateDim> scale{};
  for (std::size_t i = 0; i < kStateDim; ++i) {
    scale[i] = std::max(std::abs(x_star[i]), 1e-6);
    const double sign = coin(rng) ? 1.0 : -1.0;
    x0[i] = x_star[i] > 0.0 ? x_star[i] * (1.0 + sign * opts.relative_perturbation)
                            : opts.relative_perturbation * scale[i];
  }

  const double span = p.max_delay();
  IntegratorConfig cfg;
  cfg.step = opts.step;
  cfg.horizon = span * opts.spans;
  cfg.output_spacing = opts.step;
  const TimeSeries ts =
      integrate(p, drive.frozen(), InputProfile::constant(u_star), x0, cfg);

  StabilityProbeResult res;
  res.window_deviation.assign(static_cast<std::size_t>(opts.spans), 0.0);
  for (std::size_t n = 0; n < ts.size(); ++n) {
    const auto w = std::min(static_cast<std::size_t>(ts.t[n] / span),
                            static_cast<std::size_t>(opts.spans - 1));
    double dev = 0.0;
    for (std::size_t i = 0; i < kStateDim; ++i) {
      dev = std::max(dev, std::abs(ts.x[n][i] - x_star[i]) / scale[i]);
    }
    res.window_deviation[w] = std::max(res.window_deviation[w], dev);
  }
  res.stable = true;
  for (std::size_t k = 1; k < res.window_deviation.size(); ++k) {
    if (!(res.window_deviation[k] < res.window_deviation[k - 1])) res.stable = false;
  }
  return res;
}

LinearizedSystem operating_point(const ModelParameters& p, const CircadianDrive& drive,
                                 double u_star, const EquilibriumOptions& eq,
                                 const StabilityProbeOptions& probe) {
  const StateVector x_star = find_equilibrium(p, drive, u_star, eq);
  LinearizedSystem sys = linearize(p, drive, x_star, u_star);
  sys.stability = probe_stability(p, drive, x_star, u_star, probe).stable ? Stability::Stable
                                                                          : Stability::Unstable;
  return sys;
}

}  // namespace gba
