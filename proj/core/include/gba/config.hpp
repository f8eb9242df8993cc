#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gba/bifurcation.hpp"
#include "gba/capacity.hpp"
#include "gba/integrator.hpp"
#include "gba/model.hpp"
#include "gba/scenario.hpp"

namespace gba {

struct AnalysisSettings {
  // bifurcation sweep
  double kleak_start = 0.0;
  double kleak_stop = 3.0;
  double kleak_step = 0.1;
  double dampened_below = 0.5;
  double disrupted_below = 0.01;
  double threshold_resolution = 0.01;
  double window_start = 4320.0;
  double window_end = 14400.0;
  // linearization / frequency response
  double kleak = 0.1;
  double f_min = 1e-6;
  double f_max = 1.0;
  std::size_t points = 400;
  // capacity
  double noise_level = 1e-4;
  double power_budget = 1e-2;
  double sweep_decades = 3.0;
  std::size_t sweep_points = 13;
  double capacity_kleak_start = 0.1;
  double capacity_kleak_stop = 3.0;
  double capacity_kleak_step = 0.1;

  std::vector<double> kleak_grid() const;
  std::vector<double> capacity_kleak_grid() const;
  SweepOptions sweep_options(const StateVector& initial_state, unsigned jobs) const;
  SpectrumSettings spectrum() const { return {f_min, f_max, points}; }

  bool operator==(const AnalysisSettings&) const = default;
};

struct OutputSettings {
  std::string directory;  ///< empty: environment variable or the working directory
  bool csv = true;
  bool json = true;
  bool svg = false;

  bool operator==(const OutputSettings&) const = default;
};

/// Everything a run needs. Sections: parameters, circadian, integrator,
/// scenario, analysis, output.
struct RunConfig {
  ModelParameters parameters = ModelParameters::defaults();
  CircadianDrive circadian;
  IntegratorConfig integrator;
  ScenarioSettings scenario;
  AnalysisSettings analysis;
  OutputSettings output;

  /// Cross-checks every section; throws ConfigError naming the key.
  void validate() const;

  bool operator==(const RunConfig&) const = default;
};

/// INI text (`[section]` headers, `key = value`). Keys left out keep their
/// defaults; unknown sections or keys throw ConfigError.
RunConfig parse_ini(const std::string& text);

/// Same schema as a JSON object of section objects.
RunConfig parse_json(const std::string& text);

/// Loads by extension: `.json` is JSON, anything else INI.
RunConfig load_config(const std::filesystem::path& path);

/// Every key, 17 significant digits; parse_ini(to_ini(c)) == c.
std::string to_ini(const RunConfig& cfg);
std::string to_json(const RunConfig& cfg);

}  // namespace gba
