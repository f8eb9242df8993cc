#include "gba/frequency.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "gba/error.hpp"
#include "gba/parallel.hpp"

namespace gba {

using cd = std::complex<double>;

void DelaySystem::validate() const {
  const auto n = J0.rows();
  if (n == 0 || J0.cols() != n) throw InvalidArgument("J0 must be square and non-empty");
  if (B.size() != n) throw InvalidArgument("B length does not match the state dimension");
  if (C.size() != n) throw InvalidArgument("C length does not match the state dimension");
  for (const auto& d : delayed) {
    if (d.J.rows() != n || d.J.cols() != n) {
      throw InvalidArgument("delayed Jacobian shape does not match J0");
    }
    if (!(d.tau >= 0.0)) throw InvalidArgument("delays must be non-negative");
  }
}

DelaySystem to_delay_system(const LinearizedSystem& sys) {
  DelaySystem d;
  d.J0 = sys.J0;
  d.delayed = {{sys.tau_hpa, sys.J_hpa}, {sys.tau_gut, sys.J_gut}};
  d.B = sys.B;
  d.C = sys.C_out;
  return d;
}

cd transfer_function(const DelaySystem& sys, double omega) {
  sys.validate();
  const auto n = sys.J0.rows();
  const cd jw(0.0, omega);
  Eigen::MatrixXcd M = -sys.J0.cast<cd>();
  M.diagonal().array() += jw;
  for (const auto& d : sys.delayed) M -= std::exp(-jw * d.tau) * d.J.cast<cd>();
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
  const double rc = lu.rcond();
  if (!(rc > kSingularRcond)) {
    throw SingularSystem(
        fmt::format("characteristic matrix is numerically singular at omega = {:.6g} rad/min "
                    "(condition estimate {:.3g}); the operating point is close to a "
                    "resonance or bifurcation",
                    omega, rc > 0.0 ? 1.0 / rc : INFINITY),
        omega);
  }
  const Eigen::VectorXcd v = lu.solve(sys.B.cast<cd>());
  cd y = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) y += sys.C[i] * v[i];
  return y;
}

cd transfer_function(const LinearizedSystem& sys, double omega) {
  if (sys.stability != Stability::Stable) {
    throw UnstableOperatingPoint(fmt::format(
        "unstable operating point at u* = {}: the transfer function is only defined at "
        "equilibria that pass the stability probe",
        sys.u_star));
  }
  return transfer_function(to_delay_system(sys), omega);
}

std::vector<double> FrequencyResponse::magnitude() const {
  std::vector<double> m(H.size());
  for (std::size_t i = 0; i < H.size(); ++i) m[i] = std::abs(H[i]);
  return m;
}

std::vector<double> log_grid(double f_min, double f_max, std::size_t points) {
  if (!(f_min > 0.0) || !(f_max > f_min) || !std::isfinite(f_max)) {
    throw InvalidArgument(
        fmt::format("frequency grid needs 0 < f_min < f_max (got {}, {})", f_min, f_max));
  }
  if (points < 2) throw InvalidArgument("frequency grid needs at least 2 points");
  std::vector<double> g(points);
  const double l0 = std::log10(f_min);
  const double l1 = std::log10(f_max);
  for (std::size_t i = 0; i < points; ++i) {
    g[i] = std::pow(10.0, l0 + (l1 - l0) * static_cast<double>(i) /
                                   static_cast<double>(points - 1));
  }
  g.front() = f_min;
  g.back() = f_max;
  return g;
}

std::vector<double> unwrap_phase(const std::vector<double>& phase) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> out(phase.size());
  double offset = 0.0;
  for (std::size_t i = 0; i < phase.size(); ++i) {
    if (i > 0) {
      const double jump = phase[i] + offset - out[i - 1];
      offset -= two_pi * std::round(jump / two_pi);
    }
    out[i] = phase[i] + offset;
  }
  return out;
}

std::optional<double> half_power_bandwidth(const DelaySystem& sys,
                                           const std::vector<double>& grid,
                                           const std::vector<cd>& H, double dc_gain) {
  const double thr = std::abs(dc_gain) / std::sqrt(2.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (std::abs(H[i - 1]) >= thr && std::abs(H[i]) < thr) {
      double lo = std::log(grid[i - 1]);
      double hi = std::log(grid[i]);
      for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (std::abs(transfer_function(sys, std::exp(mid))) >= thr) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return std::exp(0.5 * (lo + hi));
    }
  }
  return std::nullopt;
}

FrequencyResponse frequency_response(const DelaySystem& sys, std::vector<double> grid,
                                     unsigned jobs) {
  sys.validate();
  if (grid.empty()) throw InvalidArgument("empty frequency grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < 0.0 || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw InvalidArgument("frequency grid must be finite, non-negative, strictly ascending");
    }
  }
  FrequencyResponse fr;
  fr.grid = std::move(grid);
  const std::size_t n = fr.grid.size();
  fr.H.resize(n);
  parallel_for(n, jobs, [&](std::size_t i) { fr.H[i] = transfer_function(sys, fr.grid[i]); });

  std::vector<double> raw(n);
  fr.magnitude_db.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(fr.H[i].real()) || !std::isfinite(fr.H[i].imag())) {
      throw Error(fmt::format("non-finite transfer function at omega = {}", fr.grid[i]));
    }
    fr.magnitude_db[i] = 20.0 * std::log10(std::abs(fr.H[i]));
    raw[i] = std::arg(fr.H[i]);
  }
  const auto unwrapped = unwrap_phase(raw);
  fr.phase_deg.resize(n);
  for (std::size_t i = 0; i < n; ++i) fr.phase_deg[i] = unwrapped[i] * 180.0 / std::numbers::pi;

  fr.dc_gain = transfer_function(sys, 0.0).real();
  fr.omega_3db = half_power_bandwidth(sys, fr.grid, fr.H, fr.dc_gain);
  if (!fr.omega_3db) {
    fr.note = fmt::format(
        "|H| does not fall below |H(0)|/sqrt(2) inside [{:.3g}, {:.3g}] rad/min; widen the "
        "frequency grid to locate the half-power bandwidth",
        fr.grid.front(), fr.grid.back());
  }
  return fr;
}

FrequencyResponse bode(const DelaySystem& sys, double f_min, double f_max, std::size_t points,
                       unsigned jobs) {
  return frequency_response(sys, log_grid(f_min, f_max, points), jobs);
}

FrequencyResponse bode(const LinearizedSystem& sys, double f_min, double f_max,
                       std::size_t points, unsigned jobs) {
  if (sys.stability != Stability::Stable) {
    throw UnstableOperatingPoint(fmt::format(
        "unstable operating point at u* = {}: Bode data are only meaningful at equilibria "
        "that pass the stability probe",
        sys.u_star));
  }
  return bode(to_delay_system(sys), f_min, f_max, points, jobs);
}

void write_csv(std::ostream& os, const FrequencyResponse& fr) {
  os << "omega,reH,imH,mag_db,phase_deg\n";
  for (std::size_t i = 0; i < fr.grid.size(); ++i) {
    fmt::print(os, "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", fr.grid[i], fr.H[i].real(),
               fr.H[i].imag(), fr.magnitude_db[i], fr.phase_deg[i]);
  }
}

}  // namespace gba
