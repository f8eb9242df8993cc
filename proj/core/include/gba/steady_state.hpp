#pragma once

#include <optional>

#include <Eigen/Dense>

#include "gba/integrator.hpp"
#include "gba/model.hpp"

namespace gba {

using Matrix6 = Eigen::Matrix<double, 6, 6>;
using Vector6 = Eigen::Matrix<double, 6, 1>;
using RowVector6 = Eigen::Matrix<double, 1, 6>;

struct EquilibriumOptions {
  /// Newton start; when empty, the end state of a frozen-drive simulation of
  /// `warmup_minutes` from `warmup_initial_state`.
  std::optional<StateVector> start;
  StateVector warmup_initial_state{0.08235, 0.3399, 0.5907, 14.56, 11.41, 0.1147};
  double warmup_minutes = 20.0 * 1440.0;
  double warmup_step = 0.5;
  int max_iterations = 200;
  double tolerance = 1e-10;  ///< on the infinity norm of the residual
};

/// Solves rhs(x, {x, x}, u_star, E_bar) = 0 by damped Newton iteration.
/// Throws ConvergenceError (carrying the best residual) if the iteration
/// stalls, or when it converges onto a negative component.
StateVector find_equilibrium(const ModelParameters& p, const CircadianDrive& drive,
                             double u_star, const EquilibriumOptions& opts = {});

/// rhs at x with both delayed views equal to x, E frozen at the mean.
Vector6 equilibrium_residual(const ModelParameters& p, const CircadianDrive& drive,
                             const StateVector& x, double u_star);

enum class Stability { Unchecked, Stable, Unstable };

/// Small-signal model around a frozen-drive equilibrium:
///   d(dx)/dt = J0 dx(t) + J_hpa dx(t - tau_hpa) + J_gut dx(t - tau_gut) + B du
///   dy = C_out dx
struct LinearizedSystem {
  StateVector x_star;
  double u_star = 0.0;
  double E_bar = 1.0;
  double tau_hpa = 0.0;
  double tau_gut = 0.0;
  Matrix6 J0 = Matrix6::Zero();
  Matrix6 J_hpa = Matrix6::Zero();
  Matrix6 J_gut = Matrix6::Zero();
  Vector6 B = Vector6::Zero();
  RowVector6 C_out = (RowVector6() << 0, 0, 0, 0, 1, 0).finished();
  Stability stability = Stability::Unchecked;

  Matrix6 J_sum() const { return J0 + J_hpa + J_gut; }
  /// -C_out (J0 + J_hpa + J_gut)^{-1} B
  double dc_gain() const;
};

/// Central finite differences with step max(1e-6, 1e-6 |x_i|) on the
/// instantaneous and each delayed argument separately. Entries outside the
/// structural patterns must be below 1e-8 and are then zeroed; a larger
/// stray entry throws Error (a delayed-argument wiring fault).
LinearizedSystem linearize(const ModelParameters& p, const CircadianDrive& drive,
                           const StateVector& x_star, double u_star);

struct StabilityProbeOptions {
  double relative_perturbation = 1e-3;
  unsigned seed = 12345;
  int spans = 3;  ///< number of max-delay windows compared
  double step = 0.5;
};

struct StabilityProbeResult {
  bool stable = false;
  std::vector<double> window_deviation;  ///< max relative deviation per span
};

/// Simulates the nonlinear model (frozen drive, constant u_star) from
/// x_star + delta with random-sign relative perturbation and checks that the
/// per-span maximum deviation shrinks from span to span.
StabilityProbeResult probe_stability(const ModelParameters& p, const CircadianDrive& drive,
                                     const StateVector& x_star, double u_star,
                                     const StabilityProbeOptions& opts = {});

/// find_equilibrium + linearize + probe_stability, with the flag set.
LinearizedSystem operating_point(const ModelParameters& p, const CircadianDrive& drive,
                                 double u_star, const EquilibriumOptions& eq = {},
                                 const StabilityProbeOptions& probe = {});

}  // namespace gba
