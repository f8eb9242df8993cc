#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gba/frequency.hpp"
#include "gba/steady_state.hpp"

namespace gba {

struct NoiseModel {
  enum class Kind { White };
  Kind kind = Kind::White;
  double level = 1e-4;  ///< PSD S_n, constant over frequency

  void validate() const;
  bool operator==(const NoiseModel&) const = default;
};

/// Water-filling over discrete bins. Bin i has channel power gain gain[i]
/// and frequency measure measure[i] (rad/min, both spectrum halves
/// included), so allocated power is (1/2 pi) sum measure_i S_i.
struct BinAllocation {
  std::vector<double> S;    ///< input PSD per bin
  std::vector<double> eta;  ///< log2(1 + gain S / N) per bin
  double water_level = 0.0;
  double power_used = 0.0;
  double capacity = 0.0;  ///< (1/2 pi) sum measure_i eta_i, bits per time unit
  bool inactive = false;  ///< no bin received power (zero capacity)
};

BinAllocation water_fill_bins(const std::vector<double>& gain,
                              const std::vector<double>& measure, double noise_level,
                              double power_budget);

/// Capacity of an arbitrary allocation over the same bins.
double allocation_capacity(const std::vector<double>& gain, const std::vector<double>& measure,
                           double noise_level, const std::vector<double>& S);

/// Trapezoid weights on a positive-frequency grid, doubled for the mirrored
/// negative half.
std::vector<double> two_sided_weights(const std::vector<double>& grid);

struct CapacityResult {
  std::vector<double> grid;  ///< rad/min
  std::vector<double> S_u_star;
  std::vector<double> eta;
  double capacity_total = 0.0;  ///< bits/min
  double water_level = 0.0;
  double power_used = 0.0;
  std::string warning;  ///< set when the budget is too small to activate any bin

  /// Running (1/pi) integral of eta from the bottom of the grid; its last
  /// value equals capacity_total.
  std::vector<double> cumulative() const;
};

struct WaterFillOptions {
  /// Refuse allocations that still put power on the top grid point.
  bool check_truncation = true;
};

CapacityResult water_fill(const FrequencyResponse& H, const NoiseModel& noise,
                          double power_budget, const WaterFillOptions& opts = {});

/// Frequency grid and evaluation settings shared by the capacity pipelines.
struct SpectrumSettings {
  double f_min = 1e-6;
  double f_max = 1.0;
  std::size_t points = 400;
};

struct CapacityPoint {
  double k_leak = 0.0;
  std::optional<double> capacity;  ///< empty when the pipeline failed here
  std::string error;               ///< failing stage and reason
};

/// equilibrium -> linearize -> bode -> water_fill for each k_leak. Per-point
/// failures (including unstable operating points) are recorded as gaps.
std::vector<CapacityPoint> capacity_vs_stress(const std::vector<double>& kleak_values,
                                              const ModelParameters& p,
                                              const CircadianDrive& drive,
                                              const NoiseModel& noise, double power_budget,
                                              const SpectrumSettings& spectrum = {},
                                              unsigned jobs = 1);

struct CurvePoint {
  double x = 0.0;
  double capacity = 0.0;
};

struct CapacitySweeps {
  std::vector<CurvePoint> versus_noise;  ///< fixed power budget
  std::vector<CurvePoint> versus_power;  ///< fixed noise level
  CapacityResult nominal;                ///< eta and cumulative capacity at the nominal pair
};

CapacitySweeps capacity_sweeps(const FrequencyResponse& H, const NoiseModel& noise,
                               double power_budget, const std::vector<double>& noise_levels,
                               const std::vector<double>& power_budgets);

/// `points` log-spaced values spanning `decades` decades centred on `center`.
std::vector<double> decade_range(double center, double decades, std::size_t points);

}  // namespace gba
