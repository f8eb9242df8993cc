#include "gba/rhythm.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "gba/error.hpp"

namespace gba {

namespace {

double prominence(std::span<const double> y, std::size_t peak) {
  const double v = y[peak];
  double left_min = v;
  for (std::size_t i = peak; i-- > 0;) {
    if (y[i] > v) break;
    left_min = std::min(left_min, y[i]);
  }
  double right_min = v;
  for (std::size_t i = peak + 1; i < y.size(); ++i) {
    if (y[i] > v) break;
    right_min = std::min(right_min, y[i]);
  }
  return v - std::max(left_min, right_min);
}

double mean_of(std::span<const double> y, const std::vector<std::size_t>& idx) {
  double s = 0.0;
  for (auto i : idx) s += y[i];
  return s / static_cast<double>(idx.size());
}

}  // namespace

std::vector<std::size_t> find_peaks(std::span<const double> y, double min_prominence) {
  std::vector<std::size_t> peaks;
  const std::size_t n = y.size();
  std::size_t i = 1;
  while (i + 1 < n) {
    if (y[i] > y[i - 1]) {
      std::size_t j = i;
      while (j + 1 < n && y[j + 1] == y[i]) ++j;
      if (j + 1 < n && y[j + 1] < y[i]) {
        const std::size_t mid = (i + j) / 2;
        if (prominence(y, mid) >= min_prominence) peaks.push_back(mid);
      }
      i = j + 1;
    } else {
      ++i;
    }
  }
  return peaks;
}

RhythmMetrics measure_rhythm(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size() || y.empty()) {
    throw InvalidArgument("measure_rhythm needs matching, non-empty time and value arrays");
  }
  RhythmMetrics m;
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  m.min = *lo;
  m.max = *hi;
  m.mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());

  const double range = m.max - m.min;
  if (!(range > 0.0)) return m;  // constant: no peaks, zero amplitude
  const double min_prom = 0.01 * range;

  const auto peaks = find_peaks(y, min_prom);
  std::vector<double> neg(y.size());
  std::transform(y.begin(), y.end(), neg.begin(), [](double v) { return -v; });
  const auto troughs = find_peaks(neg, min_prom);

  for (auto i : peaks) m.peak_times.push_back(t[i]);
  for (auto i : troughs) m.trough_times.push_back(t[i]);

  if (peaks.size() >= 2 && !troughs.empty()) {
    m.period = (t[peaks.back()] - t[peaks.front()]) / static_cast<double>(peaks.size() - 1);
    m.amplitude = mean_of(y, peaks) - mean_of(y, troughs);
  } else {
    m.amplitude = range;
  }
  return m;
}

RhythmMetrics measure_rhythm(const TimeSeries& ts, Species channel, double t0, double t1) {
  if (ts.empty() || t0 < ts.t.front() - 1e-9 || t1 > ts.t.back() + 1e-9 || !(t1 > t0)) {
    throw InvalidArgument(fmt::format(
        "rhythm window [{}, {}] must lie inside the trajectory [{}, {}]", t0, t1,
        ts.empty() ? 0.0 : ts.t.front(), ts.empty() ? 0.0 : ts.t.back()));
  }
  const std::size_t i0 = ts.lower_index(t0 - 1e-9);
  std::size_t i1 = ts.lower_index(t1 + 1e-9);
  std::vector<double> y;
  y.reserve(i1 - i0);
  for (std::size_t i = i0; i < i1; ++i) y.push_back(ts.x[i][channel]);
  return measure_rhythm(std::span<const double>(ts.t).subspan(i0, i1 - i0), y);
}

}  // namespace gba
