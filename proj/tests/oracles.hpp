#pragma once
// Independent reference computations shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "gba/model.hpp"
#include "gba/steady_state.hpp"

namespace oracle {

// x' = -x(t - 1), x = 1 on [-1, 0]. Method of steps gives
// x(t) = sum_{k=0}^{floor(t)+1} (-1)^k (t - k + 1)^k / k!.
inline double scalar_dde(double t) {
  double s = 0.0;
  double fact = 1.0;
  const int n = static_cast<int>(std::floor(t)) + 1;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) fact *= k;
    s += std::pow(-1.0, k) * std::pow(t - k + 1.0, k) / fact;
  }
  return s;
}

enum class Arg { Now, Hpa, Gut };

// Five-point stencil with its own step rule.
inline gba::Matrix6 jacobian(const gba::ModelParameters& p, const gba::StateVector& xs, double u,
                             Arg arg, double E = 1.0) {
  gba::Matrix6 J;
  for (std::size_t j = 0; j < 6; ++j) {
    const double h = 1e-3 * std::max(1.0, std::abs(xs[j]));
    auto f = [&](double shift) {
      gba::StateVector x = xs, xh = xs, xg = xs;
      gba::StateVector& target = arg == Arg::Now ? x : (arg == Arg::Hpa ? xh : xg);
      target[j] += shift;
      return gba::detail::rhs_unchecked(x, {xh, xg}, u, E, p);
    };
    const auto a = f(-2 * h), b = f(-h), c = f(h), d = f(2 * h);
    for (std::size_t i = 0; i < 6; ++i) {
      J(i, j) = (a[i] - 8 * b[i] + 8 * c[i] - d[i]) / (12 * h);
    }
  }
  return J;
}

inline bool jacobian_close(double got, double want) {
  return std::abs(got - want) <= 1e-6 * std::abs(want) + 1e-9;
}

// Exhaustive scan plus golden-section refinement of the two-bin capacity
// over S_1 in [0, 2 pi P / m], S_2 taking the remaining budget.
inline double two_bin_capacity(double g1, double g2, double m, double noise, double budget) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  auto cap = [&](double s1) {
    const double s2 = std::max(0.0, (two_pi * budget - m * s1) / m);
    return m * (std::log2(1 + g1 * s1 / noise) + std::log2(1 + g2 * s2 / noise)) / two_pi;
  };
  const double top = two_pi * budget / m;
  const int n = 20000;
  int best = 0;
  for (int i = 1; i <= n; ++i) {
    if (cap(top * i / n) > cap(top * best / n)) best = i;
  }
  double a = top * std::max(0, best - 1) / n, b = top * std::min(n, best + 1) / n;
  const double r = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 200; ++it) {
    const double c = b - r * (b - a), d = a + r * (b - a);
    if (cap(c) < cap(d)) {
      a = c;
    } else {
      b = d;
    }
  }
  return std::max({cap(0.5 * (a + b)), cap(0.0), cap(top)});
}

// Standalone ACTH/cortisol cascade with constant history, integrated by
// classical RK4 on a fine grid with linear interpolation of the lagged
// values. Returns (A, C) at every whole minute up to `horizon`.
inline std::vector<std::pair<double, double>> hpa_cascade(const gba::ModelParameters& p,
                                                          const gba::CircadianDrive& drive,
                                                          double A0, double C0, double horizon) {
  const double h = 1.0 / 64.0;
  const auto steps = static_cast<long>(std::lround(horizon / h));
  std::vector<double> A{A0}, C{C0};
  auto lagged = [&](double t) {
    const double s = (t - p.tau_hpa) / h;
    if (s <= 0.0) return std::pair{A0, C0};
    const auto i = static_cast<std::size_t>(s);
    const double f = s - static_cast<double>(i);
    if (i + 1 >= A.size()) return std::pair{A[i], C[i]};
    return std::pair{A[i] + f * (A[i + 1] - A[i]), C[i] + f * (C[i + 1] - C[i])};
  };
  auto f = [&](double t, double a, double c) {
    const auto [ah, ch] = lagged(t);
    const double E = gba::circadian_eval(t, drive);
    const double inh = std::pow(p.c, p.m1) / (std::pow(p.c, p.m1) + std::pow(ch, p.m1));
    const double act = std::pow(ah, p.m2) / (std::pow(p.a, p.m2) + std::pow(ah, p.m2));
    return std::pair{-p.eA * a + p.h * E * inh, -p.eC * c + p.alpha * act};
  };
  for (long n = 0; n < steps; ++n) {
    const double t = static_cast<double>(n) * h, a = A.back(), c = C.back();
    const auto k1 = f(t, a, c);
    const auto k2 = f(t + h / 2, a + h / 2 * k1.first, c + h / 2 * k1.second);
    const auto k3 = f(t + h / 2, a + h / 2 * k2.first, c + h / 2 * k2.second);
    const auto k4 = f(t + h, a + h * k3.first, c + h * k3.second);
    A.push_back(a + h / 6 * (k1.first + 2 * k2.first + 2 * k3.first + k4.first));
    C.push_back(c + h / 6 * (k1.second + 2 * k2.second + 2 * k3.second + k4.second));
  }
  std::vector<std::pair<double, double>> out;
  const auto per_minute = static_cast<std::size_t>(std::lround(1.0 / h));
  for (std::size_t i = 0; i < A.size(); i += per_minute) out.emplace_back(A[i], C[i]);
  return out;
}

// Equilibrium of the bare HPA pair: C solves eC C = alpha hill(h inh(C) / eA),
// found by bisection (the left side minus the right is increasing in C).
inline std::pair<double, double> bare_hpa_equilibrium(const gba::ModelParameters& p) {
  auto A_of = [&](double C) {
    return p.h * std::pow(p.c, p.m1) / (std::pow(p.c, p.m1) + std::pow(C, p.m1)) / p.eA;
  };
  auto g = [&](double C) {
    const double A = A_of(C);
    return p.eC * C - p.alpha * std::pow(A, p.m2) / (std::pow(p.a, p.m2) + std::pow(A, p.m2));
  };
  double lo = 0.0, hi = p.alpha / p.eC;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? hi : lo) = mid;
  }
  const double C = 0.5 * (lo + hi);
  return {A_of(C), C};
}

}  // namespace oracle
