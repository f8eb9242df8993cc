#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gba/bifurcation.hpp"
#include "gba/capacity.hpp"
#include "gba/frequency.hpp"
#include "gba/scenario.hpp"
#include "gba/steady_state.hpp"

namespace gba {

// JSON summaries. Numbers are written in shortest round-trip form, so every
// value reloads bit-for-bit.

std::string scenario_json(const ScenarioReport& r);
std::string linearization_json(const LinearizedSystem& sys);
std::string frequency_json(const FrequencyResponse& fr, const LinearizedSystem& sys);
std::string capacity_json(const CapacityResult& c, const NoiseModel& noise, double power_budget,
                          double k_leak, double time_scale);
std::string capacity_curve_json(const std::vector<CapacityPoint>& curve, double time_scale);
std::string capacity_sweeps_json(const CapacitySweeps& s, double time_scale);
std::string sweep_json(const SweepResult& r);

// CSV tables, 17 significant digits.

/// `kleak,amplitude,mean_cortisol,regime`
void write_sweep_csv(std::ostream& os, const SweepResult& r);
/// `omega,S_u_star,eta,cumulative`; capacities scaled by time_scale.
void write_capacity_csv(std::ostream& os, const CapacityResult& c, double time_scale);
/// `kleak,capacity,error`; failed points leave capacity empty.
void write_capacity_curve_csv(std::ostream& os, const std::vector<CapacityPoint>& curve,
                              double time_scale);
/// `<x_name>,capacity`
void write_curve_csv(std::ostream& os, const std::vector<CurvePoint>& curve,
                     const std::string& x_name, double time_scale);

}  // namespace gba
