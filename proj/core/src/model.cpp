#include "gba/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "gba/error.hpp"

namespace gba {

namespace {

constexpr double kNegativeTolerance = 1e-12;

double ipow(double base, int n) noexcept {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= base;
  return r;
}

void check_state(const StateVector& s, std::string_view which) {
  for (std::size_t i = 0; i < kStateDim; ++i) {
    const double v = s[i];
    if (!std::isfinite(v)) {
      throw InvalidArgument(fmt::format("rhs: non-finite {} component {} = {}",
                                        which, kSpeciesNames[i], v));
    }
    if (v < -kNegativeTolerance) {
      throw InvalidArgument(fmt::format("rhs: negative {} component {} = {}",
                                        which, kSpeciesNames[i], v));
    }
  }
}

void require_nonnegative(double v, std::string_view name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw InvalidArgument(
        fmt::format("parameter {} must be finite and >= 0 (got {})", name, v));
  }
}

void require_positive(double v, std::string_view name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidArgument(
        fmt::format("parameter {} must be finite and > 0 (got {})", name, v));
  }
}

}  // namespace

Species species_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kStateDim; ++i) {
    if (kSpeciesNames[i] == name) return static_cast<Species>(i);
  }
  throw InvalidArgument(fmt::format("unknown state channel '{}'", name));
}

ModelParameters ModelParameters::defaults() {
  ModelParameters p;
  // Half-saturations and couplings for the cytokine/HPA cross terms.
  p.x = {0.51705, 22.069, 0.85277, 0.077616, 10.811, 0.019545,
         2.6418, 1.1102, 159.34, 62.225, 0.033776, 12.023};
  p.d = {8.6298, 0.0081585, 0.094138, 0.70802, 1.0852, 2.3658};
  return p;
}

void ModelParameters::validate() const {
  require_positive(h, "h");
  require_positive(c, "c");
  require_positive(alpha, "alpha");
  require_positive(a, "a");
  require_positive(eA, "eA");
  require_positive(eC, "eC");
  require_positive(tau_hpa, "tau_hpa");
  require_nonnegative(k, "k");
  require_positive(eP, "eP");
  require_positive(eT, "eT");
  require_positive(eS, "eS");
  require_nonnegative(k_damage, "k_damage");
  require_positive(k_repair, "k_repair");
  require_positive(L_base, "L_base");
  require_positive(C_half, "C_half");
  require_positive(tau_gut, "tau_gut");
  if (L_base > 1.0) {
    throw InvalidArgument(fmt::format("parameter L_base must lie in (0, 1] (got {})", L_base));
  }
  if (m1 < 1) throw InvalidArgument("parameter m1 must be >= 1");
  if (m2 < 1) throw InvalidArgument("parameter m2 must be >= 1");
  if (n_gut < 1) throw InvalidArgument("parameter n_gut must be >= 1");
  for (std::size_t i = 0; i < x.size(); ++i) require_positive(x[i], fmt::format("x{}", i + 1));
  for (std::size_t i = 0; i < d.size(); ++i) require_nonnegative(d[i], fmt::format("d{}", i + 1));
}

void CircadianDrive::validate() const {
  if (!(mean_level > 0.0) || !std::isfinite(mean_level)) {
    throw InvalidArgument(fmt::format("circadian mean_level must be > 0 (got {})", mean_level));
  }
  if (!(amplitude >= 0.0 && amplitude < 1.0)) {
    throw InvalidArgument(fmt::format(
        "circadian amplitude must lie in [0, 1) so that E(t) stays positive (got {})",
        amplitude));
  }
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw InvalidArgument(fmt::format("circadian period must be > 0 (got {})", period));
  }
  if (!std::isfinite(phase)) throw InvalidArgument("circadian phase must be finite");
}

double circadian_eval(double t, const CircadianDrive& drive) {
  if (drive.amplitude == 0.0) return drive.mean_level;
  const double arg = 2.0 * std::numbers::pi * (t - drive.phase) / drive.period;
  return drive.mean_level * (1.0 + drive.amplitude * std::cos(arg));
}

namespace detail {

double hill(double x, double K, int n) noexcept {
  const double xn = ipow(x, n);
  return xn / (ipow(K, n) + xn);
}

double inhibition(double x, double K, int n) noexcept {
  const double Kn = ipow(K, n);
  return Kn / (Kn + ipow(x, n));
}

StateVector rhs_unchecked(const StateVector& x, const DelayedView& delayed,
                          double u, double E, const ModelParameters& p) noexcept {
  const auto& xs = p.x;
  const auto& ds = p.d;
  const double C_hpa = delayed.hpa.C;
  const double A_hpa = delayed.hpa.A;
  const double C_gut = delayed.gut.C;

  StateVector dx;
  dx.P = u * x.L - p.eP * x.P -
         ds[0] * (x.T / (xs[0] + x.T)) * (x.S / (xs[1] + x.S)) * x.P;
  dx.T = -p.eT * x.T + p.k * x.P / (xs[2] + x.P) +
         (ds[1] / (xs[3] + x.C) + ds[2] / (xs[4] + x.S)) * (x.T / (xs[5] + x.T));
  dx.S = -p.eS * x.S + ds[3] * (1.0 / (xs[6] + x.C)) * (x.T / (xs[7] + x.T));
  dx.A = -p.eA * x.A + p.h * E * inhibition(C_hpa, p.c, p.m1) +
         ds[4] * (x.S / (xs[8] + x.S)) * (x.T / (xs[9] + x.T));
  dx.C = -p.eC * x.C + p.alpha * hill(A_hpa, p.a, p.m2) +
         ds[5] * (x.S / (xs[10] + x.S)) * (x.T / (xs[11] + x.T));
  dx.L = p.k_damage * hill(C_gut, p.C_half, p.n_gut) - p.k_repair * (x.L - p.L_base);
  return dx;
}

}  // namespace detail

StateVector rhs(double /*t*/, const StateVector& x, const DelayedView& delayed,
                double u, double E, const ModelParameters& p) {
  check_state(x, "state");
  check_state(delayed.hpa, "hpa-delayed");
  check_state(delayed.gut, "gut-delayed");
  if (!std::isfinite(u) || u < 0.0) {
    throw InvalidArgument(fmt::format("rhs: leak rate u must be finite and >= 0 (got {})", u));
  }
  if (!std::isfinite(E) || !(E > 0.0)) {
    throw InvalidArgument(fmt::format("rhs: circadian value E must be > 0 (got {})", E));
  }
  return detail::rhs_unchecked(x, delayed, u, E, p);
}

}  // namespace gba
