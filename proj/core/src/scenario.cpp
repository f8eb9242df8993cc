#include "gba/scenario.hpp"

#include <cmath>
#include <deque>
#include <vector>

#include <fmt/format.h>

#include "gba/error.hpp"

namespace gba {

namespace {

// Sliding max (or min) over samples [i - w, i].
std::vector<double> trailing_extreme(const std::vector<double>& y, std::size_t w, bool max) {
  std::vector<double> out(y.size());
  std::deque<std::size_t> dq;
  for (std::size_t i = 0; i < y.size(); ++i) {
    while (!dq.empty() && (max ? y[dq.back()] <= y[i] : y[dq.back()] >= y[i])) dq.pop_back();
    dq.push_back(i);
    while (dq.front() + w < i) dq.pop_front();
    out[i] = y[dq.front()];
  }
  return out;
}

double mean_over(const TimeSeries& ts, Species s, double t0, double t1) {
  const std::size_t i0 = ts.lower_index(t0 - 1e-9);
  const std::size_t i1 = ts.lower_index(t1 + 1e-9);
  double acc = 0.0;
  for (std::size_t i = i0; i < i1; ++i) acc += ts.x[i][s];
  return acc / static_cast<double>(i1 - i0);
}

ScenarioReport analyse(ScenarioKind kind, TimeSeries ts, double w0, double w1,
                       const ScenarioSettings& settings) {
  ScenarioReport r;
  r.kind = kind;
  r.window_start = w0;
  r.window_end = w1;
  const auto m = measure_rhythm(ts, Species::C, w0, w1);
  if (m.peak_times.size() >= 3) r.cortisol_period = m.period;
  r.cortisol_amplitude = m.amplitude;
  r.window_mean_cortisol = m.mean;

  const double t_end = ts.t.back();
  const double f0 = std::max(ts.t.front(), t_end - settings.final_window);
  const auto fm = measure_rhythm(ts, Species::C, f0, t_end);
  r.final_amplitude = fm.amplitude;
  r.final_mean_cortisol = mean_over(ts, Species::C, f0, t_end);
  r.trajectory = std::move(ts);
  return r;
}

}  // namespace

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Healthy: return "healthy";
    case ScenarioKind::Acute: return "acute";
    case ScenarioKind::Chronic: return "chronic";
    case ScenarioKind::Custom: return "custom";
  }
  return "custom";
}

ScenarioKind scenario_from_string(const std::string& name) {
  if (name == "healthy") return ScenarioKind::Healthy;
  if (name == "acute") return ScenarioKind::Acute;
  if (name == "chronic") return ScenarioKind::Chronic;
  if (name == "custom") return ScenarioKind::Custom;
  throw InvalidArgument(fmt::format(
      "unknown scenario '{}' (expected healthy, acute, chronic or custom)", name));
}

InputProfile ScenarioSettings::profile(ScenarioKind kind) const {
  switch (kind) {
    case ScenarioKind::Healthy:
      return InputProfile::constant(baseline);
    case ScenarioKind::Acute:
      return InputProfile::pulse(baseline, elevated, onset, onset + pulse_duration);
    case ScenarioKind::Chronic:
      return InputProfile::step(baseline, elevated, onset);
    case ScenarioKind::Custom:
      break;
  }
  throw InvalidArgument("the custom scenario needs an explicit input profile");
}

std::optional<double> envelope_recovery_time(const TimeSeries& reference,
                                             const TimeSeries& stressed, Species channel,
                                             double t_from, double window, double tolerance,
                                             double hold) {
  if (reference.size() != stressed.size() || reference.size() < 2) {
    throw InvalidArgument("recovery comparison needs two series on the same grid");
  }
  const double dt = reference.spacing();
  const auto w = static_cast<std::size_t>(std::llround(window / dt));
  const auto hold_n = static_cast<std::size_t>(std::llround(hold / dt));
  const auto ref = reference.channel(channel);
  const auto str = stressed.channel(channel);
  const auto ref_max = trailing_extreme(ref, w, true);
  const auto ref_min = trailing_extreme(ref, w, false);
  const auto str_max = trailing_extreme(str, w, true);
  const auto str_min = trailing_extreme(str, w, false);

  const std::size_t n = ref.size();
  std::vector<char> ok(n, 0);
  for (std::size_t i = w; i < n; ++i) {
    ok[i] = std::abs(str_max[i] - ref_max[i]) <= tolerance * std::abs(ref_max[i]) &&
            std::abs(str_min[i] - ref_min[i]) <= tolerance * std::abs(ref_min[i]);
  }
  const std::size_t start = std::max(reference.lower_index(t_from - 1e-9), w);
  // run_from[i] = number of consecutive ok samples starting at i.
  std::vector<std::size_t> run_from(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) run_from[i] = ok[i] ? run_from[i + 1] + 1 : 0;
  for (std::size_t s = start; s + hold_n < n; ++s) {
    if (run_from[s] >= hold_n + 1) return reference.t[s] - t_from;
  }
  return std::nullopt;
}

ScenarioReport run_scenario(ScenarioKind kind, const ModelParameters& p,
                            const CircadianDrive& drive, const IntegratorConfig& cfg,
                            const ScenarioSettings& settings) {
  if (kind == ScenarioKind::Custom) {
    throw InvalidArgument("the custom scenario needs an explicit input profile");
  }
  if (cfg.horizon < 14400.0 - 1e-9) {
    throw InvalidArgument(fmt::format(
        "named scenarios need a horizon of at least 14400 min (got {})", cfg.horizon));
  }
  const InputProfile profile = settings.profile(kind);
  TimeSeries ts = integrate(p, drive, profile, settings.initial_state, cfg);
  const double t_end = ts.t.back();

  switch (kind) {
    case ScenarioKind::Healthy:
      return analyse(kind, std::move(ts), settings.analysis_start, t_end, settings);
    case ScenarioKind::Chronic:
      return analyse(kind, std::move(ts), std::max(settings.onset, t_end - settings.final_window),
                     t_end, settings);
    case ScenarioKind::Acute: {
      const double t_off = settings.onset + settings.pulse_duration;
      const TimeSeries reference = integrate(p, drive, InputProfile::constant(settings.baseline),
                                             settings.initial_state, cfg);
      auto recovery =
          envelope_recovery_time(reference, ts, Species::C, t_off, settings.envelope_window,
                                 settings.envelope_tolerance, settings.recovery_hold);
      ScenarioReport r = analyse(kind, std::move(ts), t_off, t_end, settings);
      r.recovery_time = recovery;
      return r;
    }
    case ScenarioKind::Custom:
      break;
  }
  return {};
}

ScenarioReport run_scenario(const InputProfile& profile, const ModelParameters& p,
                            const CircadianDrive& drive, const IntegratorConfig& cfg,
                            const ScenarioSettings& settings) {
  TimeSeries ts = integrate(p, drive, profile, settings.initial_state, cfg);
  const double t_end = ts.t.back();
  const double w0 = std::min(settings.analysis_start, t_end / 2.0);
  return analyse(ScenarioKind::Custom, std::move(ts), w0, t_end, settings);
}

}  // namespace gba
