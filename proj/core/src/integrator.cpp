#include "gba/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <fmt/format.h>

#include "gba/error.hpp"

namespace gba {

namespace {

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

HistoryBuffer solve_dde(const DdeSystem& sys, const Prehistory& prehistory,
                        const StepControl& control) {
  const std::size_t n = sys.dim;
  if (n == 0 || !sys.rhs) throw InvalidArgument("DDE system needs a dimension and a rhs");
  if (!(control.step > 0.0)) throw InvalidArgument("step must be positive");
  if (!(control.horizon >= 0.0)) throw InvalidArgument("horizon must be non-negative");
  double max_delay = 0.0;
  for (double tau : sys.delays) {
    if (!(tau >= control.step)) {
      throw InvalidArgument(fmt::format(
          "delay {} is shorter than the step {}; method of steps needs step <= delay",
          tau, control.step));
    }
    max_delay = std::max(max_delay, tau);
  }

  const double steps_real = control.horizon / control.step;
  const auto steps = static_cast<std::size_t>(std::llround(steps_real));
  if (std::abs(steps_real - static_cast<double>(steps)) > 1e-9 * std::max(1.0, steps_real)) {
    throw InvalidArgument(fmt::format("horizon {} is not a whole number of steps of {}",
                                      control.horizon, control.step));
  }

  HistoryBuffer buf(n, control.t0, max_delay, prehistory);
  const std::size_t nd = sys.delays.size();
  const double h = control.step;

  std::vector<double> x(n), xs(n), k1(n), k2(n), k3(n), k4(n), lagged(nd * n);

  auto fill_lagged = [&](double t) {
    for (std::size_t j = 0; j < nd; ++j) {
      buf.interpolate(t - sys.delays[j], std::span<double>(lagged.data() + j * n, n));
    }
  };
  auto eval = [&](StageTime st, std::span<const double> state, std::span<double> out) {
    fill_lagged(st.t);
    sys.rhs(st, state, lagged, out);
  };

  prehistory(control.t0, x);
  if (!all_finite(x)) throw IntegrationError("initial state is not finite", control.t0);
  eval({control.t0, false}, x, k1);
  if (!all_finite(k1)) throw IntegrationError("non-finite derivative at start", control.t0);
  buf.push(control.t0, x, k1);

  for (std::size_t s = 0; s < steps; ++s) {
    const double t = control.t0 + static_cast<double>(s) * h;
    const double t_mid = t + 0.5 * h;
    const double t_end = control.t0 + static_cast<double>(s + 1) * h;

    for (std::size_t i = 0; i < n; ++i) xs[i] = x[i] + 0.5 * h * k1[i];
    eval({t_mid, false}, xs, k2);
    for (std::size_t i = 0; i < n; ++i) xs[i] = x[i] + 0.5 * h * k2[i];
    eval({t_mid, false}, xs, k3);
    for (std::size_t i = 0; i < n; ++i) xs[i] = x[i] + h * k3[i];
    eval({t_end, true}, xs, k4);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    if (!all_finite(x)) {
      throw IntegrationError(fmt::format("non-finite state at t = {}", t_end), t_end);
    }
    // Derivative at the new knot doubles as k1 of the next step.
    eval({t_end, false}, x, k1);
    if (!all_finite(k1)) {
      throw IntegrationError(fmt::format("non-finite derivative at t = {}", t_end), t_end);
    }
    buf.push(t_end, x, k1);
  }
  return buf;
}

void IntegratorConfig::validate(const ModelParameters& p) const {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw InvalidArgument(fmt::format("integrator step must be > 0 (got {})", step));
  }
  if (step > p.min_delay() / 4.0 * (1.0 + 1e-12)) {
    throw InvalidArgument(fmt::format(
        "integrator step {} too large: must be <= min(tau_hpa, tau_gut)/4 = {}", step,
        p.min_delay() / 4.0));
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw InvalidArgument(fmt::format("integrator horizon must be > 0 (got {})", horizon));
  }
  if (!(output_spacing > 0.0) || !std::isfinite(output_spacing)) {
    throw InvalidArgument("integrator output_spacing must be > 0");
  }
  if (!(clamp_tolerance >= 0.0)) throw InvalidArgument("clamp_tolerance must be >= 0");
  const double ratio = horizon / step;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
    throw InvalidArgument(fmt::format("horizon {} is not a whole number of steps of {}",
                                      horizon, step));
  }
}

TimeSeries integrate(const ModelParameters& p, const CircadianDrive& drive,
                     const InputProfile& input, const InitialHistory& history,
                     const IntegratorConfig& cfg) {
  p.validate();
  drive.validate();
  input.validate();
  cfg.validate(p);

  const double clamp = cfg.clamp_tolerance;
  auto guard = [clamp](std::span<double> v, double t, const char* what) {
    for (std::size_t i = 0; i < kStateDim; ++i) {
      if (!std::isfinite(v[i])) {
        throw IntegrationError(fmt::format("non-finite {} component {} at t = {}", what,
                                           kSpeciesNames[i], t),
                               t);
      }
      if (v[i] < 0.0) {
        if (v[i] < -clamp) {
          throw IntegrationError(fmt::format("{} component {} = {} went negative at t = {}",
                                             what, kSpeciesNames[i], v[i], t),
                                 t);
        }
        v[i] = 0.0;
      }
    }
  };

  DdeSystem sys;
  sys.dim = kStateDim;
  sys.delays = {p.tau_hpa, p.tau_gut};
  sys.rhs = [&](StageTime st, std::span<const double> x, std::span<const double> lagged,
                std::span<double> dxdt) {
    std::array<double, kStateDim> cur{}, hpa{}, gut{};
    std::copy_n(x.begin(), kStateDim, cur.begin());
    std::copy_n(lagged.begin(), kStateDim, hpa.begin());
    std::copy_n(lagged.begin() + kStateDim, kStateDim, gut.begin());
    guard(cur, st.t, "state");
    // Knots are guarded when they are produced, so anything negative here is
    // undershoot of the cubic interpolant between nonnegative knots.
    for (auto* lag : {&hpa, &gut}) {
      for (auto& v : *lag) {
        if (!std::isfinite(v)) {
          throw IntegrationError(fmt::format("non-finite delayed state at t = {}", st.t), st.t);
        }
        v = std::max(v, 0.0);
      }
    }
    const double u = st.left_limit ? input.left_limit(st.t) : input.value(st.t);
    const double E = circadian_eval(st.t, drive);
    const DelayedView dv{StateVector::from_array(hpa), StateVector::from_array(gut)};
    const StateVector d = detail::rhs_unchecked(StateVector::from_array(cur), dv, u, E, p);
    for (std::size_t i = 0; i < kStateDim; ++i) dxdt[i] = d[i];
  };

  Prehistory pre;
  if (const auto* constant = std::get_if<StateVector>(&history)) {
    const auto arr = constant->to_array();
    pre = constant_prehistory(std::vector<double>(arr.begin(), arr.end()));
  } else {
    const auto& fn = std::get<std::function<StateVector(double)>>(history);
    pre = [fn](double t, std::span<double> out) {
      const StateVector v = fn(t);
      for (std::size_t i = 0; i < kStateDim; ++i) out[i] = v[i];
    };
  }

  const HistoryBuffer buf = solve_dde(sys, pre, {0.0, cfg.step, cfg.horizon});

  TimeSeries ts;
  ts.params = std::make_shared<const ModelParameters>(p);
  const auto samples =
      static_cast<std::size_t>(std::floor(cfg.horizon / cfg.output_spacing + 1e-9)) + 1;
  ts.t.reserve(samples);
  ts.x.reserve(samples);
  ts.u.reserve(samples);
  ts.E.reserve(samples);
  std::array<double, kStateDim> v{};
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = std::min(static_cast<double>(i) * cfg.output_spacing, buf.t_now());
    buf.interpolate(t, v);
    guard(v, t, "state");
    ts.t.push_back(t);
    ts.x.push_back(StateVector::from_array(v));
    ts.u.push_back(input.value(t));
    ts.E.push_back(circadian_eval(t, drive));
  }
  return ts;
}

}  // namespace gba
