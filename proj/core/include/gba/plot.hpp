#pragma once

#include <string>
#include <vector>

#include "gba/bifurcation.hpp"
#include "gba/capacity.hpp"
#include "gba/frequency.hpp"
#include "gba/time_series.hpp"

namespace gba {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  std::vector<Series> series;
  std::vector<double> vertical_rules;
  std::vector<std::string> rule_labels;
};

/// Self-contained SVG with the panels stacked vertically. Output depends
/// only on the input. Throws InvalidArgument on empty data.
std::string render_svg(const std::vector<Panel>& panels);

/// Cortisol and ACTH against time in hours.
std::string timeseries_svg(const TimeSeries& ts);
/// Magnitude (dB) and phase (deg) on a log-frequency axis.
std::string bode_svg(const FrequencyResponse& fr);
/// Spectral efficiency and cumulative capacity.
std::string capacity_svg(const CapacityResult& c, double time_scale);
/// Capacity against k_leak (failed points are skipped).
std::string capacity_curve_svg(const std::vector<CapacityPoint>& curve, double time_scale);
/// Amplitude and mean cortisol against k_leak, thresholds as vertical rules.
std::string bifurcation_svg(const SweepResult& r);

}  // namespace gba
