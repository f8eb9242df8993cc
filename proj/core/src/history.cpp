#include "gba/history.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "gba/error.hpp"

namespace gba {

Prehistory constant_prehistory(std::vector<double> value) {
  return [v = std::move(value)](double, std::span<double> out) {
    std::copy(v.begin(), v.end(), out.begin());
  };
}

double hermite(double t0, double y0, double dy0, double t1, double y1,
               double dy1, double t) noexcept {
  const double h = t1 - t0;
  const double s = (t - t0) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  return h00 * y0 + h10 * h * dy0 + h01 * y1 + h11 * h * dy1;
}

HistoryBuffer::HistoryBuffer(std::size_t dim, double t0, double max_delay,
                             Prehistory prehistory)
    : dim_(dim), t0_(t0), max_delay_(max_delay), prehistory_(std::move(prehistory)) {
  if (dim_ == 0) throw InvalidArgument("history buffer dimension must be positive");
  if (!(max_delay_ >= 0.0)) throw InvalidArgument("max delay must be non-negative");
  if (!prehistory_) throw InvalidArgument("history buffer needs an initial history");
}

double HistoryBuffer::t_now() const {
  return times_.empty() ? t0_ : times_.back();
}

void HistoryBuffer::push(double t, std::span<const double> x,
                         std::span<const double> dxdt) {
  if (x.size() != dim_ || dxdt.size() != dim_) {
    throw InvalidArgument("history knot has wrong dimension");
  }
  if (!times_.empty() && !(t > times_.back())) {
    throw InvalidArgument(fmt::format(
        "history knot times must increase (got {} after {})", t, times_.back()));
  }
  if (times_.empty() && t != t0_) {
    throw InvalidArgument("first history knot must sit at the start time");
  }
  times_.push_back(t);
  values_.insert(values_.end(), x.begin(), x.end());
  derivs_.insert(derivs_.end(), dxdt.begin(), dxdt.end());
}

std::span<const double> HistoryBuffer::knot_value(std::size_t i) const {
  return {values_.data() + i * dim_, dim_};
}

std::span<const double> HistoryBuffer::knot_derivative(std::size_t i) const {
  return {derivs_.data() + i * dim_, dim_};
}

void HistoryBuffer::interpolate(double t, std::span<double> out) const {
  if (out.size() != dim_) throw InvalidArgument("interpolation output has wrong dimension");
  if (!(t >= t_oldest()) || t > t_now()) {
    throw HistoryRangeError(fmt::format(
        "history query at t = {} outside span [{}, {}]", t, t_oldest(), t_now()));
  }
  if (t < t0_ || times_.empty()) {
    prehistory_(t, out);
    return;
  }
  // First knot with time >= t.
  const auto it = std::lower_bound(times_.begin(), times_.end(), t);
  const auto i1 = static_cast<std::size_t>(it - times_.begin());
  if (*it == t) {
    const auto v = knot_value(i1);
    std::copy(v.begin(), v.end(), out.begin());
    return;
  }
  const std::size_t i0 = i1 - 1;
  const double ta = times_[i0];
  const double tb = times_[i1];
  const double* ya = values_.data() + i0 * dim_;
  const double* yb = values_.data() + i1 * dim_;
  const double* da = derivs_.data() + i0 * dim_;
  const double* db = derivs_.data() + i1 * dim_;
  for (std::size_t k = 0; k < dim_; ++k) {
    out[k] = hermite(ta, ya[k], da[k], tb, yb[k], db[k], t);
  }
}

std::vector<double> HistoryBuffer::interpolate(double t) const {
  std::vector<double> out(dim_);
  interpolate(t, out);
  return out;
}

}  // namespace gba
