#include "gba/bifurcation.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "gba/error.hpp"
#include "gba/parallel.hpp"
#include "gba/rhythm.hpp"

namespace gba {

namespace {

int rank(Regime r) { return static_cast<int>(r); }

}  // namespace

std::string to_string(Regime r) {
  switch (r) {
    case Regime::HealthyRhythm: return "healthy-rhythm";
    case Regime::Dampened: return "dampened";
    case Regime::Disrupted: return "disrupted";
  }
  return "healthy-rhythm";
}

Regime regime_from_string(const std::string& name) {
  if (name == "healthy-rhythm") return Regime::HealthyRhythm;
  if (name == "dampened") return Regime::Dampened;
  if (name == "disrupted") return Regime::Disrupted;
  throw InvalidArgument(fmt::format("unknown regime '{}'", name));
}

void SweepOptions::validate() const {
  if (!(disrupted_below > 0.0) || !(dampened_below > disrupted_below) || dampened_below > 1.0) {
    throw InvalidArgument(fmt::format(
        "regime cuts need 0 < disrupted_below < dampened_below <= 1 (got {}, {})",
        disrupted_below, dampened_below));
  }
  if (!(window_start >= 0.0) || !(window_end > window_start)) {
    throw InvalidArgument("analysis window must satisfy 0 <= start < end");
  }
  if (!(resolution > 0.0)) throw InvalidArgument("threshold resolution must be > 0");
}

std::vector<double> kleak_grid(double from, double to, double step) {
  if (!(step > 0.0) || !(to >= from) || !std::isfinite(to) || from < 0.0) {
    throw InvalidArgument(
        fmt::format("k_leak grid needs 0 <= from <= to and step > 0 (got {}, {}, {})", from, to,
                    step));
  }
  std::vector<double> g;
  for (long i = 0;; ++i) {
    const double v = from + static_cast<double>(i) * step;
    if (v > to + 1e-9) break;
    g.push_back(std::min(v, to));
  }
  return g;
}

std::vector<double> default_kleak_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 30; ++i) g.push_back(i / 10.0);
  return g;
}

BifurcationPoint simulate_point(double k_leak, const ModelParameters& p,
                                const CircadianDrive& drive, const IntegratorConfig& cfg,
                                const SweepOptions& opts) {
  const TimeSeries ts = integrate(p, drive, InputProfile::constant(k_leak), opts.initial_state, cfg);
  const auto m = measure_rhythm(ts, Species::C, opts.window_start, opts.window_end);
  BifurcationPoint pt;
  pt.k_leak = k_leak;
  pt.amplitude = m.amplitude;
  pt.mean_cortisol = m.mean;
  return pt;
}

Regime classify(double amplitude, double reference_amplitude, const SweepOptions& opts) {
  if (amplitude >= opts.dampened_below * reference_amplitude) return Regime::HealthyRhythm;
  if (amplitude >= opts.disrupted_below * reference_amplitude) return Regime::Dampened;
  return Regime::Disrupted;
}

SweepResult sweep(const std::vector<double>& grid, const ModelParameters& p,
                  const CircadianDrive& drive, const IntegratorConfig& cfg,
                  const SweepOptions& opts) {
  opts.validate();
  p.validate();
  drive.validate();
  cfg.validate(p);
  if (grid.empty()) throw InvalidArgument("empty k_leak grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0) || !std::isfinite(grid[i]) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw InvalidArgument("k_leak grid must be finite, non-negative and strictly ascending");
    }
  }
  if (cfg.horizon < opts.window_end - 1e-9 || cfg.horizon < 14400.0 - 1e-9) {
    throw InvalidArgument(fmt::format(
        "bifurcation sweeps need a horizon of at least 10 days and the analysis window end "
        "(got {} min)",
        cfg.horizon));
  }

  SweepResult res;
  res.points.resize(grid.size());
  parallel_for(grid.size(), opts.jobs, [&](std::size_t i) {
    res.points[i] = simulate_point(grid[i], p, drive, cfg, opts);
  });
  res.reference_amplitude = grid.front() == 0.0
                                ? res.points.front().amplitude
                                : simulate_point(0.0, p, drive, cfg, opts).amplitude;
  for (auto& pt : res.points) pt.regime = classify(pt.amplitude, res.reference_amplitude, opts);

  for (std::size_t i = 1; i < res.points.size(); ++i) {
    if (rank(res.points[i].regime) < rank(res.points[i - 1].regime)) {
      res.anomaly = true;
      res.anomaly_note = fmt::format(
          "regime re-enters {} at k_leak = {} after {} at k_leak = {}",
          to_string(res.points[i].regime), res.points[i].k_leak,
          to_string(res.points[i - 1].regime), res.points[i - 1].k_leak);
      break;
    }
  }

  auto refine = [&](Regime target) -> std::optional<double> {
    auto it = std::find_if(res.points.begin(), res.points.end(), [&](const BifurcationPoint& pt) {
      return rank(pt.regime) >= rank(target);
    });
    if (it == res.points.end()) return std::nullopt;
    if (it == res.points.begin()) return it->k_leak;
    double lo = std::prev(it)->k_leak;
    double hi = it->k_leak;
    while (hi - lo > opts.resolution) {
      const double mid = 0.5 * (lo + hi);
      const auto pt = simulate_point(mid, p, drive, cfg, opts);
      if (rank(classify(pt.amplitude, res.reference_amplitude, opts)) >= rank(target)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return hi;
  };
  res.threshold_1 = refine(Regime::Dampened);
  res.threshold_2 = refine(Regime::Disrupted);
  if (res.threshold_1 && res.threshold_2 && *res.threshold_1 > *res.threshold_2) {
    res.anomaly = true;
    if (res.anomaly_note.empty()) {
      res.anomaly_note = "refined thresholds are out of order";
    }
  }
  return res;
}

std::optional<double> perturbation_recovery_time(double k_leak, const ModelParameters& p,
                                                 const CircadianDrive& drive,
                                                 const IntegratorConfig& cfg,
                                                 const StateVector& initial_state,
                                                 double kick_time, double kick_duration,
                                                 double relative_kick, double fraction) {
  if (!(k_leak > 0.0)) throw InvalidArgument("perturbation recovery needs k_leak > 0");
  if (!(kick_duration > 0.0) || !(relative_kick > 0.0) || !(fraction > 0.0 && fraction < 1.0)) {
    throw InvalidArgument("invalid kick settings");
  }
  const double kick_end = kick_time + kick_duration;
  if (kick_end >= cfg.horizon) throw InvalidArgument("kick must end inside the horizon");
  const TimeSeries base = integrate(p, drive, InputProfile::constant(k_leak), initial_state, cfg);
  const TimeSeries kicked =
      integrate(p, drive, InputProfile::pulse(k_leak, k_leak * (1.0 + relative_kick), kick_time, kick_end),
                initial_state, cfg);
  const std::size_t n = base.size();
  std::vector<double> dev(n);
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    dev[i] = std::abs(kicked.x[i].C - base.x[i].C);
    peak = std::max(peak, dev[i]);
  }
  if (peak == 0.0) return 0.0;
  const double tol = fraction * peak;
  // Last sample at or above tolerance; recovery is just after it.
  std::size_t last = n;
  for (std::size_t i = n; i-- > 0;) {
    if (dev[i] >= tol) {
      last = i;
      break;
    }
  }
  if (last + 1 >= n) return std::nullopt;
  return std::max(0.0, base.t[last + 1] - kick_end);
}

}  // namespace gba
