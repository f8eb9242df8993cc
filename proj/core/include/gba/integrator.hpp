#pragma once

// Fixed-step method-of-steps integration for systems with constant delays.
//
// Each step is classical RK4. Delayed arguments at stage times are read from
// the dense history (cubic Hermite between knots), so the step must not
// exceed the smallest delay: lookups then never touch the step in progress.

#include <cstddef>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "gba/history.hpp"
#include "gba/input_profile.hpp"
#include "gba/model.hpp"
#include "gba/time_series.hpp"

namespace gba {

/// Stage evaluation time. `left_limit` is set for stages at the end of a step
/// so piecewise-constant inputs can be read from the left at breakpoints.
struct StageTime {
  double t;
  bool left_limit;
};

struct DdeSystem {
  std::size_t dim = 0;
  std::vector<double> delays;
  /// `lagged` holds delays.size() consecutive blocks of `dim` values, block j
  /// being the state at t - delays[j].
  std::function<void(StageTime t, std::span<const double> x,
                     std::span<const double> lagged, std::span<double> dxdt)>
      rhs;
};

struct StepControl {
  double t0 = 0.0;
  double step = 0.01;
  double horizon = 1.0;  ///< integrate over [t0, t0 + horizon]
};

/// Integrates `sys` and returns the full knot history. Throws
/// IntegrationError (with the failure time) on a non-finite state.
HistoryBuffer solve_dde(const DdeSystem& sys, const Prehistory& prehistory,
                        const StepControl& control);

enum class IntegrationMethod { Rk4Hermite };

struct IntegratorConfig {
  double step = 0.5;
  IntegrationMethod method = IntegrationMethod::Rk4Hermite;
  double clamp_tolerance = 1e-12;
  double horizon = 14400.0;
  double output_spacing = 1.0;

  /// step > 0, step <= min delay / 4, horizon a whole number of steps.
  void validate(const ModelParameters& p) const;

  bool operator==(const IntegratorConfig&) const = default;
};

/// Constant state or an arbitrary function on [-max delay, 0].
using InitialHistory = std::variant<StateVector, std::function<StateVector(double)>>;

/// Simulates the six-state model on [0, horizon], sampled every
/// output_spacing minutes. Components in [-clamp_tolerance, 0) are clamped
/// to zero before each right-hand-side evaluation; anything more negative,
/// or non-finite, aborts with IntegrationError.
TimeSeries integrate(const ModelParameters& p, const CircadianDrive& drive,
                     const InputProfile& input, const InitialHistory& history,
                     const IntegratorConfig& cfg);

}  // namespace gba
