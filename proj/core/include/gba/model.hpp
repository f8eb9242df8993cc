#pragma once

// Six-state closed-loop gut/immune/HPA model.
//
// State ordering is P (endotoxin), T (TNF-alpha), S (IL-6), A (ACTH),
// C (cortisol), L (gut permeability). Every matrix and vector downstream
// uses this ordering.

#include <array>
#include <cstddef>
#include <string_view>

namespace gba {

inline constexpr std::size_t kStateDim = 6;

enum class Species : std::size_t { P = 0, T = 1, S = 2, A = 3, C = 4, L = 5 };

inline constexpr std::array<std::string_view, kStateDim> kSpeciesNames{
    "P", "T", "S", "A", "C", "L"};

constexpr std::size_t index_of(Species s) noexcept {
  return static_cast<std::size_t>(s);
}

/// Parses "P".."L" (case-sensitive). Throws InvalidArgument otherwise.
Species species_from_name(std::string_view name);

struct StateVector {
  double P = 0.0;
  double T = 0.0;
  double S = 0.0;
  double A = 0.0;
  double C = 0.0;
  double L = 0.0;

  double& operator[](std::size_t i) noexcept;
  double operator[](std::size_t i) const noexcept;
  double& operator[](Species s) noexcept { return (*this)[index_of(s)]; }
  double operator[](Species s) const noexcept { return (*this)[index_of(s)]; }

  std::array<double, kStateDim> to_array() const noexcept {
    return {P, T, S, A, C, L};
  }
  static StateVector from_array(const std::array<double, kStateDim>& v) noexcept {
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
  }

  bool operator==(const StateVector&) const = default;
};

inline constexpr std::array<double StateVector::*, kStateDim> kStateMembers{
    &StateVector::P, &StateVector::T, &StateVector::S,
    &StateVector::A, &StateVector::C, &StateVector::L};

inline double& StateVector::operator[](std::size_t i) noexcept {
  return this->*kStateMembers[i];
}
inline double StateVector::operator[](std::size_t i) const noexcept {
  return this->*kStateMembers[i];
}

/// Rates are per minute; delays in minutes; concentrations in the nominal
/// model units. Hill coefficients are integers.
struct ModelParameters {
  // HPA axis
  double h = 7.66;
  double c = 6.11;
  int m1 = 4;
  double alpha = 0.28;
  double a = 21.0;
  int m2 = 4;
  double eA = 0.04;
  double eC = 0.01;
  double tau_hpa = 10.0;
  // immune
  double k = 0.0504;
  double eP = 0.05;
  double eT = 0.038;
  double eS = 0.02;
  // gut barrier
  double k_damage = 0.002;
  double k_repair = 0.05;
  double L_base = 0.1;
  double C_half = 15.0;
  int n_gut = 2;
  double tau_gut = 120.0;
  // half-saturation constants x1..x12 and coupling magnitudes d1..d6
  std::array<double, 12> x{};
  std::array<double, 6> d{};

  /// Library defaults (the same values ship in config/default.ini).
  static ModelParameters defaults();

  double max_delay() const noexcept {
    return tau_hpa > tau_gut ? tau_hpa : tau_gut;
  }
  double min_delay() const noexcept {
    return tau_hpa < tau_gut ? tau_hpa : tau_gut;
  }

  /// Throws InvalidArgument naming the first offending field.
  void validate() const;

  bool operator==(const ModelParameters&) const = default;
};

/// E(t) = mean_level * (1 + amplitude * cos(2*pi*(t - phase) / period)).
/// The default phase puts the peak at 08:00 when t = 0 is midnight.
struct CircadianDrive {
  double mean_level = 1.0;
  double amplitude = 0.5;
  double period = 1440.0;
  double phase = 480.0;

  /// A drive frozen at its mean (used for equilibria and linearization).
  CircadianDrive frozen() const noexcept {
    return {mean_level, 0.0, period, phase};
  }

  void validate() const;

  bool operator==(const CircadianDrive&) const = default;
};

double circadian_eval(double t, const CircadianDrive& drive);

struct DelayedView {
  StateVector hpa;  ///< state at t - tau_hpa
  StateVector gut;  ///< state at t - tau_gut
};

/// Right-hand side of the six coupled equations with u standing in for the
/// leak rate. Pure. Rejects non-finite inputs and components below -1e-12.
StateVector rhs(double t, const StateVector& x, const DelayedView& delayed,
                double u, double E, const ModelParameters& p);

namespace detail {
/// Unchecked evaluation of the same formulas; finite differencing may probe
/// slightly negative arguments around zero-valued equilibria.
StateVector rhs_unchecked(const StateVector& x, const DelayedView& delayed,
                          double u, double E, const ModelParameters& p) noexcept;

/// x^n / (K^n + x^n)
double hill(double x, double K, int n) noexcept;

/// K^n / (K^n + x^n), evaluated without cancellation for large x.
double inhibition(double x, double K, int n) noexcept;
}  // namespace detail

}  // namespace gba
