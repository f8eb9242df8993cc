#include "gba/serialize.hpp"

#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

namespace gba {

namespace {

using json = nlohmann::ordered_json;

template <typename T>
json optional_value(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json state_json(const StateVector& x) {
  json j = json::object();
  for (std::size_t i = 0; i < kStateDim; ++i) j[std::string(kSpeciesNames[i])] = x[i];
  return j;
}

template <typename M>
json matrix_json(const M& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

std::string units(double time_scale) { return time_scale == 1.0 ? "bits/min" : "bits/s"; }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string scenario_json(const ScenarioReport& r) {
  json j;
  j["scenario"] = to_string(r.kind);
  j["window_start"] = r.window_start;
  j["window_end"] = r.window_end;
  j["cortisol_period"] = optional_value(r.cortisol_period);
  j["cortisol_amplitude"] = r.cortisol_amplitude;
  j["window_mean_cortisol"] = r.window_mean_cortisol;
  j["recovery_time"] = optional_value(r.recovery_time);
  j["final_mean_cortisol"] = r.final_mean_cortisol;
  j["final_amplitude"] = r.final_amplitude;
  j["samples"] = r.trajectory.size();
  return dump(j);
}

std::string linearization_json(const LinearizedSystem& sys) {
  json j;
  j["u_star"] = sys.u_star;
  j["E_bar"] = sys.E_bar;
  j["x_star"] = state_json(sys.x_star);
  j["tau_hpa"] = sys.tau_hpa;
  j["tau_gut"] = sys.tau_gut;
  j["stability"] = sys.stability == Stability::Stable     ? "stable"
                   : sys.stability == Stability::Unstable ? "unstable"
                                                          : "unchecked";
  j["J0"] = matrix_json(sys.J0);
  j["J_hpa"] = matrix_json(sys.J_hpa);
  j["J_gut"] = matrix_json(sys.J_gut);
  j["B"] = matrix_json(sys.B);
  j["C_out"] = matrix_json(sys.C_out);
  j["dc_gain"] = sys.dc_gain();
  return dump(j);
}

std::string frequency_json(const FrequencyResponse& fr, const LinearizedSystem& sys) {
  json j;
  j["u_star"] = sys.u_star;
  j["dc_gain"] = fr.dc_gain;
  j["omega_3db"] = optional_value(fr.omega_3db);
  if (!fr.note.empty()) j["note"] = fr.note;
  j["f_min"] = fr.grid.front();
  j["f_max"] = fr.grid.back();
  j["points"] = fr.grid.size();
  return dump(j);
}

std::string capacity_json(const CapacityResult& c, const NoiseModel& noise, double power_budget,
                          double k_leak, double time_scale) {
  json j;
  j["k_leak"] = k_leak;
  j["noise_level"] = noise.level;
  j["power_budget"] = power_budget;
  j["units"] = units(time_scale);
  j["capacity_total"] = c.capacity_total * time_scale;
  j["water_level"] = c.water_level;
  j["power_used"] = c.power_used;
  if (!c.warning.empty()) j["warning"] = c.warning;
  return dump(j);
}

std::string capacity_curve_json(const std::vector<CapacityPoint>& curve, double time_scale) {
  json pts = json::array();
  for (const auto& p : curve) {
    json e;
    e["k_leak"] = p.k_leak;
    e["capacity"] = p.capacity ? json(*p.capacity * time_scale) : json(nullptr);
    if (!p.error.empty()) e["error"] = p.error;
    pts.push_back(e);
  }
  json j;
  j["units"] = units(time_scale);
  j["points"] = pts;
  return dump(j);
}

std::string capacity_sweeps_json(const CapacitySweeps& s, double time_scale) {
  auto curve = [&](const std::vector<CurvePoint>& c, const char* x) {
    json a = json::array();
    for (const auto& p : c) a.push_back(json{{x, p.x}, {"capacity", p.capacity * time_scale}});
    return a;
  };
  json j;
  j["units"] = units(time_scale);
  j["nominal_capacity"] = s.nominal.capacity_total * time_scale;
  j["versus_noise"] = curve(s.versus_noise, "noise_level");
  j["versus_power"] = curve(s.versus_power, "power_budget");
  return dump(j);
}

std::string sweep_json(const SweepResult& r) {
  json j;
  j["reference_amplitude"] = r.reference_amplitude;
  j["threshold_1"] = optional_value(r.threshold_1);
  j["threshold_2"] = optional_value(r.threshold_2);
  j["anomaly"] = r.anomaly;
  if (!r.anomaly_note.empty()) j["anomaly_note"] = r.anomaly_note;
  j["points"] = r.points.size();
  return dump(j);
}

void write_sweep_csv(std::ostream& os, const SweepResult& r) {
  os << "kleak,amplitude,mean_cortisol,regime\n";
  for (const auto& p : r.points) {
    fmt::print(os, "{:.17g},{:.17g},{:.17g},{}\n", p.k_leak, p.amplitude, p.mean_cortisol,
               to_string(p.regime));
  }
}

void write_capacity_csv(std::ostream& os, const CapacityResult& c, double time_scale) {
  os << "omega,S_u_star,eta,cumulative\n";
  const auto cum = c.cumulative();
  for (std::size_t i = 0; i < c.grid.size(); ++i) {
    fmt::print(os, "{:.17g},{:.17g},{:.17g},{:.17g}\n", c.grid[i], c.S_u_star[i], c.eta[i],
               cum[i] * time_scale);
  }
}

void write_capacity_curve_csv(std::ostream& os, const std::vector<CapacityPoint>& curve,
                              double time_scale) {
  os << "kleak,capacity,error\n";
  for (const auto& p : curve) {
    std::string err = p.error;
    for (char& ch : err) {
      if (ch == ',' || ch == '\n') ch = ';';
    }
    if (p.capacity) {
      fmt::print(os, "{:.17g},{:.17g},{}\n", p.k_leak, *p.capacity * time_scale, err);
    } else {
      fmt::print(os, "{:.17g},,{}\n", p.k_leak, err);
    }
  }
}

void write_curve_csv(std::ostream& os, const std::vector<CurvePoint>& curve,
                     const std::string& x_name, double time_scale) {
  os << x_name << ",capacity\n";
  for (const auto& p : curve) fmt::print(os, "{:.17g},{:.17g}\n", p.x, p.capacity * time_scale);
}

}  // namespace gba
