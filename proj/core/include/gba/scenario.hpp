#pragma once

#include <optional>
#include <string>

#include "gba/input_profile.hpp"
#include "gba/integrator.hpp"
#include "gba/model.hpp"
#include "gba/rhythm.hpp"
#include "gba/time_series.hpp"

namespace gba {

enum class ScenarioKind { Healthy, Acute, Chronic, Custom };

std::string to_string(ScenarioKind kind);
ScenarioKind scenario_from_string(const std::string& name);

/// Stress magnitudes and timing for the named scenarios.
struct ScenarioSettings {
  double baseline = 0.1;
  double elevated = 3.0;
  double onset = 2880.0;          ///< acute and chronic stressors start here
  double pulse_duration = 720.0;  ///< acute only
  /// Constant history; defaults to the rounded k_leak = 0.1 equilibrium.
  StateVector initial_state{0.08235, 0.3399, 0.5907, 14.56, 11.41, 0.1147};
  /// Observables for healthy runs are taken on [analysis_start, horizon].
  double analysis_start = 4320.0;
  /// Length of the trailing window used for the final-days metrics.
  double final_window = 4320.0;
  /// Acute recovery: trailing envelope length, relative tolerance and the
  /// time the envelope must stay inside it.
  double envelope_window = 1440.0;
  double envelope_tolerance = 0.05;
  double recovery_hold = 1440.0;

  InputProfile profile(ScenarioKind kind) const;

  bool operator==(const ScenarioSettings&) const = default;
};

struct ScenarioReport {
  ScenarioKind kind = ScenarioKind::Healthy;
  TimeSeries trajectory;
  double window_start = 0.0;
  double window_end = 0.0;
  std::optional<double> cortisol_period;  ///< minutes; only with >= 3 peaks
  double cortisol_amplitude = 0.0;        ///< peak-to-trough over the window
  double window_mean_cortisol = 0.0;
  std::optional<double> recovery_time;    ///< acute only; minutes after pulse end
  double final_mean_cortisol = 0.0;       ///< mean over the final window
  double final_amplitude = 0.0;           ///< peak-to-trough over the final window
};

/// Runs a named scenario. Analysis windows: healthy uses
/// [analysis_start, horizon]; chronic uses the final window (the stressor is
/// still settling earlier); acute uses [pulse end, horizon] and also runs the
/// unstressed baseline to measure recovery against.
ScenarioReport run_scenario(ScenarioKind kind, const ModelParameters& p,
                            const CircadianDrive& drive, const IntegratorConfig& cfg,
                            const ScenarioSettings& settings = {});

/// Custom input profile; observables over [analysis_start, horizon].
ScenarioReport run_scenario(const InputProfile& profile, const ModelParameters& p,
                            const CircadianDrive& drive, const IntegratorConfig& cfg,
                            const ScenarioSettings& settings = {});

/// First time s >= t_from at which the trailing envelope (max and min over
/// [s - window, s]) of `stressed` stays within `tolerance` (relative) of the
/// envelope of `reference` for `hold` minutes. Returned as s - t_from.
/// Both series must share their time grid.
std::optional<double> envelope_recovery_time(const TimeSeries& reference,
                                             const TimeSeries& stressed, Species channel,
                                             double t_from, double window, double tolerance,
                                             double hold);

}  // namespace gba
