#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gba {

/// Initial history on [t0 - max_delay, t0]. The solver samples it once at t0
/// for the first knot; afterwards the buffer consults it only for t < t0.
using Prehistory = std::function<void(double t, std::span<double> out)>;

Prehistory constant_prehistory(std::vector<double> value);

/// Dense solution record for a delay system: knots (t, x, dx/dt) from t0
/// onward plus the prescribed prehistory before t0. Queries between knots use
/// cubic Hermite interpolation with the stored derivatives.
class HistoryBuffer {
 public:
  HistoryBuffer(std::size_t dim, double t0, double max_delay, Prehistory prehistory);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return times_.size(); }
  bool empty() const noexcept { return times_.empty(); }

  double t_oldest() const noexcept { return t0_ - max_delay_; }
  double t_now() const;

  /// Knot times must increase strictly.
  void push(double t, std::span<const double> x, std::span<const double> dxdt);

  double knot_time(std::size_t i) const { return times_[i]; }
  std::span<const double> knot_value(std::size_t i) const;
  std::span<const double> knot_derivative(std::size_t i) const;

  /// Throws HistoryRangeError outside [t_oldest, t_now]; never extrapolates.
  void interpolate(double t, std::span<double> out) const;
  std::vector<double> interpolate(double t) const;

 private:
  std::size_t dim_;
  double t0_;
  double max_delay_;
  Prehistory prehistory_;
  std::vector<double> times_;
  std::vector<double> values_;
  std::vector<double> derivs_;
};

/// Cubic Hermite interpolant on [t0, t1] at t.
double hermite(double t0, double y0, double dy0, double t1, double y1,
               double dy1, double t) noexcept;

}  // namespace gba
