#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gba/steady_state.hpp"

namespace gba {

struct DelayTerm {
  double tau = 0.0;
  Eigen::MatrixXd J;
};

/// Generic single-input single-output linear delay system
///   dx/dt = J0 x(t) + sum_k J_k x(t - tau_k) + B u,   y = C x.
struct DelaySystem {
  Eigen::MatrixXd J0;
  std::vector<DelayTerm> delayed;
  Eigen::VectorXd B;
  Eigen::RowVectorXd C;

  /// Shape consistency; throws InvalidArgument.
  void validate() const;
};

DelaySystem to_delay_system(const LinearizedSystem& sys);

/// Matrices whose reciprocal condition estimate falls below this are
/// treated as singular.
inline constexpr double kSingularRcond = 1e-12;

/// C (j omega I - J0 - sum_k J_k e^{-j omega tau_k})^{-1} B. Throws
/// SingularSystem when the matrix is numerically singular at omega.
std::complex<double> transfer_function(const DelaySystem& sys, double omega);

/// Same for the model; refuses operating points not marked stable.
std::complex<double> transfer_function(const LinearizedSystem& sys, double omega);

struct FrequencyResponse {
  std::vector<double> grid;  ///< rad/min, strictly ascending
  std::vector<std::complex<double>> H;
  std::vector<double> magnitude_db;
  std::vector<double> phase_deg;  ///< unwrapped
  double dc_gain = 0.0;
  std::optional<double> omega_3db;
  std::string note;  ///< set when omega_3db is absent

  std::vector<double> magnitude() const;
};

/// `points` log-spaced frequencies from f_min to f_max inclusive.
std::vector<double> log_grid(double f_min, double f_max, std::size_t points);

/// Removes 2 pi jumps between consecutive phases (radians).
std::vector<double> unwrap_phase(const std::vector<double>& phase);

/// Evaluates the response on an arbitrary ascending grid, `jobs` workers.
FrequencyResponse frequency_response(const DelaySystem& sys, std::vector<double> grid,
                                     unsigned jobs = 1);

/// Log-spaced Bode data.
FrequencyResponse bode(const DelaySystem& sys, double f_min, double f_max, std::size_t points,
                       unsigned jobs = 1);
FrequencyResponse bode(const LinearizedSystem& sys, double f_min = 1e-6, double f_max = 1.0,
                       std::size_t points = 400, unsigned jobs = 1);

/// First downward crossing of |H| = |dc| / sqrt(2), refined by bisection on a
/// log-frequency scale between the bracketing grid points.
std::optional<double> half_power_bandwidth(const DelaySystem& sys,
                                           const std::vector<double>& grid,
                                           const std::vector<std::complex<double>>& H,
                                           double dc_gain);

/// Header `omega,reH,imH,mag_db,phase_deg`; 17 significant digits.
void write_csv(std::ostream& os, const FrequencyResponse& fr);

}  // namespace gba
