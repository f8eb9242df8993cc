#include "gba/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "gba/error.hpp"
#include "gba/parallel.hpp"

namespace gba {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Water levels this close (relative) to the cheapest threshold activate nothing.
constexpr double kLevelResolution = 1e-12;

void check_bins(const std::vector<double>& gain, const std::vector<double>& measure,
                double noise_level) {
  if (gain.size() != measure.size() || gain.empty()) {
    throw InvalidArgument("gain and measure must be non-empty and of equal length");
  }
  for (std::size_t i = 0; i < gain.size(); ++i) {
    if (!std::isfinite(gain[i]) || gain[i] < 0.0) {
      throw InvalidArgument(fmt::format("channel gain {} at bin {} is invalid", gain[i], i));
    }
    if (!std::isfinite(measure[i]) || measure[i] < 0.0) {
      throw InvalidArgument(fmt::format("bin measure {} at bin {} is invalid", measure[i], i));
    }
  }
  if (!std::isfinite(noise_level) || !(noise_level > 0.0)) {
    throw InvalidArgument(fmt::format("noise level must be > 0 (got {})", noise_level));
  }
}

double spectral_efficiency(double gain, double S, double noise_level) {
  return std::log1p(gain * S / noise_level) / std::numbers::ln2;
}

}  // namespace

void NoiseModel::validate() const {
  if (!std::isfinite(level) || !(level > 0.0)) {
    throw InvalidArgument(fmt::format("noise level must be > 0 (got {})", level));
  }
}

BinAllocation water_fill_bins(const std::vector<double>& gain,
                              const std::vector<double>& measure, double noise_level,
                              double power_budget) {
  check_bins(gain, measure, noise_level);
  if (!std::isfinite(power_budget) || !(power_budget > 0.0)) {
    throw InvalidArgument(fmt::format("power budget must be > 0 (got {})", power_budget));
  }
  const std::size_t n = gain.size();

  // Usable bins by ascending noise-to-gain threshold.
  std::vector<std::size_t> order;
  std::vector<double> thr(n, INFINITY);
  for (std::size_t i = 0; i < n; ++i) {
    if (gain[i] > 0.0 && measure[i] > 0.0) {
      thr[i] = noise_level / gain[i];
      order.push_back(i);
    }
  }
  BinAllocation out;
  out.S.assign(n, 0.0);
  out.eta.assign(n, 0.0);
  if (order.empty()) {
    out.inactive = true;
    return out;
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return thr[a] < thr[b]; });
  const std::size_t m = order.size();
  std::vector<double> M(m + 1, 0.0), T(m + 1, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    M[k + 1] = M[k] + measure[order[k]];
    T[k + 1] = T[k] + measure[order[k]] * thr[order[k]];
  }
  // Power needed to raise the level to the k-th threshold with the k
  // cheapest bins filled; non-decreasing in k.
  auto need = [&](std::size_t k) {
    return k >= m ? INFINITY : (thr[order[k]] * M[k] - T[k]) / kTwoPi;
  };
  // Smallest k in [1, m] with need(k) >= budget: the active-set size.
  std::size_t lo = 1, hi = m;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (need(mid) >= power_budget) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const std::size_t active = lo;
  const double mu = (kTwoPi * power_budget + T[active]) / M[active];
  out.water_level = mu;
  if (mu - thr[order[0]] <= kLevelResolution * thr[order[0]]) {
    out.inactive = true;
    return out;
  }

  for (std::size_t k = 0; k < active; ++k) {
    const std::size_t i = order[k];
    out.S[i] = std::max(0.0, mu - thr[i]);
    out.eta[i] = spectral_efficiency(gain[i], out.S[i], noise_level);
    out.power_used += measure[i] * out.S[i];
    out.capacity += measure[i] * out.eta[i];
  }
  out.power_used /= kTwoPi;
  out.capacity /= kTwoPi;
  out.inactive = out.power_used == 0.0;
  return out;
}

double allocation_capacity(const std::vector<double>& gain, const std::vector<double>& measure,
                           double noise_level, const std::vector<double>& S) {
  check_bins(gain, measure, noise_level);
  if (S.size() != gain.size()) throw InvalidArgument("allocation length mismatch");
  double c = 0.0;
  for (std::size_t i = 0; i < gain.size(); ++i) {
    c += measure[i] * spectral_efficiency(gain[i], S[i], noise_level);
  }
  return c / kTwoPi;
}

std::vector<double> two_sided_weights(const std::vector<double>& grid) {
  if (grid.size() < 2) throw InvalidArgument("quadrature needs at least two grid points");
  std::vector<double> w(grid.size(), 0.0);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double h = grid[i + 1] - grid[i];
    if (!(h > 0.0)) throw InvalidArgument("frequency grid must be strictly ascending");
    w[i] += h;  // 2 * h/2
    w[i + 1] += h;
  }
  return w;
}

std::vector<double> CapacityResult::cumulative() const {
  std::vector<double> c(grid.size(), 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    c[i] = c[i - 1] + (grid[i] - grid[i - 1]) * (eta[i - 1] + eta[i]) / kTwoPi;
  }
  return c;
}

CapacityResult water_fill(const FrequencyResponse& H, const NoiseModel& noise,
                          double power_budget, const WaterFillOptions& opts) {
  noise.validate();
  if (H.grid.size() != H.H.size()) throw InvalidArgument("frequency response size mismatch");
  std::vector<double> gain(H.grid.size());
  for (std::size_t i = 0; i < gain.size(); ++i) gain[i] = std::norm(H.H[i]);
  const auto bins = water_fill_bins(gain, two_sided_weights(H.grid), noise.level, power_budget);

  CapacityResult r;
  r.grid = H.grid;
  r.S_u_star = bins.S;
  r.eta = bins.eta;
  r.capacity_total = bins.capacity;
  r.water_level = bins.water_level;
  r.power_used = bins.power_used;
  if (bins.inactive) {
    r.warning = fmt::format(
        "power budget {:.3g} is too small to activate any frequency; capacity is zero",
        power_budget);
  }
  if (opts.check_truncation && r.S_u_star.back() > 0.0) {
    throw GridTruncated(fmt::format(
        "water-filling allocates power at the top of the grid ({:.3g} rad/min); the active "
        "band is truncated, extend the frequency grid",
        r.grid.back()));
  }
  return r;
}

std::vector<CapacityPoint> capacity_vs_stress(const std::vector<double>& kleak_values,
                                              const ModelParameters& p,
                                              const CircadianDrive& drive,
                                              const NoiseModel& noise, double power_budget,
                                              const SpectrumSettings& spectrum, unsigned jobs) {
  noise.validate();
  std::vector<CapacityPoint> out(kleak_values.size());
  parallel_for(kleak_values.size(), jobs, [&](std::size_t i) {
    const double k = kleak_values[i];
    out[i].k_leak = k;
    const char* stage = "equilibrium";
    try {
      const LinearizedSystem sys = operating_point(p, drive, k);
      stage = "bode";
      const FrequencyResponse fr = bode(sys, spectrum.f_min, spectrum.f_max, spectrum.points);
      stage = "water-fill";
      out[i].capacity = water_fill(fr, noise, power_budget).capacity_total;
    } catch (const Error& e) {
      out[i].error = fmt::format("{}: {}", stage, e.what());
    }
  });
  return out;
}

CapacitySweeps capacity_sweeps(const FrequencyResponse& H, const NoiseModel& noise,
                               double power_budget, const std::vector<double>& noise_levels,
                               const std::vector<double>& power_budgets) {
  auto ascending_positive = [](const std::vector<double>& v, const char* what) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!(v[i] > 0.0) || (i > 0 && !(v[i] > v[i - 1]))) {
        throw InvalidArgument(fmt::format("{} range must be positive and ascending", what));
      }
    }
  };
  ascending_positive(noise_levels, "noise");
  ascending_positive(power_budgets, "power");

  CapacitySweeps s;
  s.nominal = water_fill(H, noise, power_budget);
  for (double level : noise_levels) {
    NoiseModel nm = noise;
    nm.level = level;
    s.versus_noise.push_back({level, water_fill(H, nm, power_budget).capacity_total});
  }
  for (double pw : power_budgets) {
    s.versus_power.push_back({pw, water_fill(H, noise, pw).capacity_total});
  }
  return s;
}

std::vector<double> decade_range(double center, double decades, std::size_t points) {
  if (!(center > 0.0) || !(decades > 0.0) || points < 2) {
    throw InvalidArgument("decade range needs center > 0, decades > 0 and >= 2 points");
  }
  const double l = std::log10(center);
  return log_grid(std::pow(10.0, l - decades / 2.0), std::pow(10.0, l + decades / 2.0), points);
}

}  // namespace gba
