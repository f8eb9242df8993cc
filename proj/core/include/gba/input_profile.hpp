#pragma once

#include <string>
#include <utility>
#include <vector>

namespace gba {

/// Piecewise-constant, right-continuous leak-rate input u(t).
struct InputProfile {
  enum class Kind { Constant, Pulse, Step, Piecewise };

  Kind kind = Kind::Constant;
  double baseline = 0.1;
  double elevated = 0.0;
  double t_on = 0.0;
  double t_off = 0.0;  ///< pulse only
  /// (t_start, value) pairs for Piecewise; the first value also applies
  /// before its t_start.
  std::vector<std::pair<double, double>> segments;

  static InputProfile constant(double value);
  static InputProfile pulse(double baseline, double elevated, double t_on, double t_off);
  static InputProfile step(double baseline, double elevated, double t_on);
  static InputProfile piecewise(std::vector<std::pair<double, double>> segments);

  double value(double t) const;
  /// lim_{s -> t-} u(s); differs from value(t) only at breakpoints.
  double left_limit(double t) const;

  /// Breakpoints in increasing order.
  std::vector<double> breakpoints() const;

  void validate() const;

  bool operator==(const InputProfile&) const = default;
};

std::string to_string(InputProfile::Kind kind);
InputProfile::Kind input_kind_from_string(const std::string& name);

}  // namespace gba
