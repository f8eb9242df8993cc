#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gba/integrator.hpp"
#include "gba/model.hpp"

namespace gba {

enum class Regime { HealthyRhythm, Dampened, Disrupted };

std::string to_string(Regime r);
Regime regime_from_string(const std::string& name);

struct BifurcationPoint {
  double k_leak = 0.0;
  double amplitude = 0.0;  ///< cortisol peak-to-trough over the analysis window
  double mean_cortisol = 0.0;
  Regime regime = Regime::HealthyRhythm;
};

struct SweepOptions {
  /// Regime cuts, as fractions of the zero-stress amplitude.
  double dampened_below = 0.5;
  double disrupted_below = 0.01;
  /// Cortisol analysis window (days 3-10 by default).
  double window_start = 4320.0;
  double window_end = 14400.0;
  double resolution = 0.01;  ///< threshold bracket width after refinement
  StateVector initial_state{0.08235, 0.3399, 0.5907, 14.56, 11.41, 0.1147};
  unsigned jobs = 1;

  void validate() const;
  bool operator==(const SweepOptions&) const = default;
};

struct SweepResult {
  std::vector<BifurcationPoint> points;
  double reference_amplitude = 0.0;  ///< zero-stress amplitude
  std::optional<double> threshold_1;  ///< entry into the dampened regime
  std::optional<double> threshold_2;  ///< entry into the disrupted regime
  bool anomaly = false;               ///< regime sequence is not monotone
  std::string anomaly_note;
};

/// 0 to 3.0 in steps of 0.1.
std::vector<double> default_kleak_grid();

/// Grid `from`, `from + step`, ... up to `to` (inclusive within 1e-9).
std::vector<double> kleak_grid(double from, double to, double step);

/// Simulates one constant k_leak with the full circadian drive and measures
/// cortisol over the analysis window. The regime is left at HealthyRhythm;
/// classify() assigns it.
BifurcationPoint simulate_point(double k_leak, const ModelParameters& p,
                                const CircadianDrive& drive, const IntegratorConfig& cfg,
                                const SweepOptions& opts);

Regime classify(double amplitude, double reference_amplitude, const SweepOptions& opts);

/// Sweeps the ascending grid in parallel and refines both thresholds by
/// bisection. The zero-stress reference is simulated separately when 0 is
/// not on the grid.
SweepResult sweep(const std::vector<double>& kleak_grid, const ModelParameters& p,
                  const CircadianDrive& drive, const IntegratorConfig& cfg,
                  const SweepOptions& opts = {});

/// Time for cortisol to return after a small, brief input kick at constant
/// k_leak: the kick raises u by `relative_kick` for `kick_duration` minutes
/// at `kick_time`, and recovery is the first time after the kick ends from
/// which |C_kicked - C_unkicked| stays below `fraction` of its peak.
/// Empty if that never happens within the horizon.
std::optional<double> perturbation_recovery_time(double k_leak, const ModelParameters& p,
                                                 const CircadianDrive& drive,
                                                 const IntegratorConfig& cfg,
                                                 const StateVector& initial_state,
                                                 double kick_time = 4320.0,
                                                 double kick_duration = 60.0,
                                                 double relative_kick = 0.05,
                                                 double fraction = 0.05);

}  // namespace gba
