#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gba/model.hpp"
#include "gba/time_series.hpp"

namespace gba {

struct RhythmMetrics {
  std::optional<double> period;  ///< mean inter-peak spacing; needs >= 2 peaks
  double amplitude = 0.0;        ///< mean(peak) - mean(trough), or max - min
  std::vector<double> peak_times;
  std::vector<double> trough_times;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// Indices of local maxima whose prominence is at least `min_prominence`.
/// Flat tops count once, at their midpoint.
std::vector<std::size_t> find_peaks(std::span<const double> y, double min_prominence);

/// Peak-based rhythm metrics of a uniformly sampled signal. Peaks and troughs
/// need a prominence of 1% of the signal's range.
RhythmMetrics measure_rhythm(std::span<const double> t, std::span<const double> y);

/// Same, restricted to samples with t in [t0, t1] of one state channel.
RhythmMetrics measure_rhythm(const TimeSeries& ts, Species channel, double t0, double t1);

}  // namespace gba
