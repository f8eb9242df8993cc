#include "gba/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <variant>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "gba/error.hpp"

namespace gba {

namespace {

struct MethodRef {
  IntegrationMethod* m;
};

using Target = std::variant<double*, int*, std::size_t*, bool*, std::string*, MethodRef>;

struct Field {
  const char* section;
  std::string key;
  Target target;
};

std::vector<Field> fields(RunConfig& c) {
  std::vector<Field> f;
  auto& p = c.parameters;
  auto add = [&](const char* s, std::string k, Target t) { f.push_back({s, std::move(k), t}); };
  add("parameters", "h", &p.h);
  add("parameters", "c", &p.c);
  add("parameters", "m1", &p.m1);
  add("parameters", "alpha", &p.alpha);
  add("parameters", "a", &p.a);
  add("parameters", "m2", &p.m2);
  add("parameters", "eA", &p.eA);
  add("parameters", "eC", &p.eC);
  add("parameters", "tau_hpa", &p.tau_hpa);
  add("parameters", "k", &p.k);
  add("parameters", "eP", &p.eP);
  add("parameters", "eT", &p.eT);
  add("parameters", "eS", &p.eS);
  add("parameters", "k_damage", &p.k_damage);
  add("parameters", "k_repair", &p.k_repair);
  add("parameters", "L_base", &p.L_base);
  add("parameters", "C_half", &p.C_half);
  add("parameters", "n_gut", &p.n_gut);
  add("parameters", "tau_gut", &p.tau_gut);
  for (std::size_t i = 0; i < p.x.size(); ++i) add("parameters", fmt::format("x{}", i + 1), &p.x[i]);
  for (std::size_t i = 0; i < p.d.size(); ++i) add("parameters", fmt::format("d{}", i + 1), &p.d[i]);

  add("circadian", "mean_level", &c.circadian.mean_level);
  add("circadian", "amplitude", &c.circadian.amplitude);
  add("circadian", "period", &c.circadian.period);
  add("circadian", "phase", &c.circadian.phase);

  add("integrator", "step", &c.integrator.step);
  add("integrator", "method", MethodRef{&c.integrator.method});
  add("integrator", "clamp_tolerance", &c.integrator.clamp_tolerance);
  add("integrator", "horizon", &c.integrator.horizon);
  add("integrator", "output_spacing", &c.integrator.output_spacing);

  auto& s = c.scenario;
  add("scenario", "baseline", &s.baseline);
  add("scenario", "elevated", &s.elevated);
  add("scenario", "onset", &s.onset);
  add("scenario", "pulse_duration", &s.pulse_duration);
  for (std::size_t i = 0; i < kStateDim; ++i) {
    add("scenario", fmt::format("initial_{}", kSpeciesNames[i]), &s.initial_state[i]);
  }
  add("scenario", "analysis_start", &s.analysis_start);
  add("scenario", "final_window", &s.final_window);
  add("scenario", "envelope_window", &s.envelope_window);
  add("scenario", "envelope_tolerance", &s.envelope_tolerance);
  add("scenario", "recovery_hold", &s.recovery_hold);

  auto& a = c.analysis;
  add("analysis", "kleak_start", &a.kleak_start);
  add("analysis", "kleak_stop", &a.kleak_stop);
  add("analysis", "kleak_step", &a.kleak_step);
  add("analysis", "dampened_below", &a.dampened_below);
  add("analysis", "disrupted_below", &a.disrupted_below);
  add("analysis", "threshold_resolution", &a.threshold_resolution);
  add("analysis", "window_start", &a.window_start);
  add("analysis", "window_end", &a.window_end);
  add("analysis", "kleak", &a.kleak);
  add("analysis", "f_min", &a.f_min);
  add("analysis", "f_max", &a.f_max);
  add("analysis", "points", &a.points);
  add("analysis", "noise_level", &a.noise_level);
  add("analysis", "power_budget", &a.power_budget);
  add("analysis", "sweep_decades", &a.sweep_decades);
  add("analysis", "sweep_points", &a.sweep_points);
  add("analysis", "capacity_kleak_start", &a.capacity_kleak_start);
  add("analysis", "capacity_kleak_stop", &a.capacity_kleak_stop);
  add("analysis", "capacity_kleak_step", &a.capacity_kleak_step);

  add("output", "directory", &c.output.directory);
  add("output", "csv", &c.output.csv);
  add("output", "json", &c.output.json);
  add("output", "svg", &c.output.svg);
  return f;
}

[[noreturn]] void bad_value(const Field& f, const std::string& text, const char* expected) {
  throw ConfigError(
      fmt::format("[{}] {} = '{}' is not a valid {}", f.section, f.key, text, expected));
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <typename T>
bool parse_number(const std::string& text, T& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

IntegrationMethod method_from_string(const std::string& s) {
  if (s == "rk4-hermite") return IntegrationMethod::Rk4Hermite;
  throw ConfigError(fmt::format("[integrator] method = '{}' is unknown (expected rk4-hermite)", s));
}

void set_from_text(const Field& f, const std::string& raw) {
  const std::string text = trim(raw);
  std::visit(
      [&](auto t) {
        using T = decltype(t);
        if constexpr (std::is_same_v<T, MethodRef>) {
          *t.m = method_from_string(text);
        } else if constexpr (std::is_same_v<T, double*>) {
          if (!parse_number(text, *t)) bad_value(f, text, "number");
        } else if constexpr (std::is_same_v<T, int*>) {
          if (!parse_number(text, *t)) bad_value(f, text, "integer");
        } else if constexpr (std::is_same_v<T, std::size_t*>) {
          if (!parse_number(text, *t)) bad_value(f, text, "non-negative integer");
        } else if constexpr (std::is_same_v<T, bool*>) {
          if (text == "true") {
            *t = true;
          } else if (text == "false") {
            *t = false;
          } else {
            bad_value(f, text, "boolean (true/false)");
          }
        } else {
          *t = text;
        }
      },
      f.target);
}

std::string get_text(const Field& f) {
  return std::visit(
      [](auto t) -> std::string {
        using T = decltype(t);
        if constexpr (std::is_same_v<T, MethodRef>) {
          return "rk4-hermite";
        } else if constexpr (std::is_same_v<T, double*>) {
          return fmt::format("{:.17g}", *t);
        } else if constexpr (std::is_same_v<T, bool*>) {
          return *t ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string*>) {
          return *t;
        } else {
          return fmt::format("{}", *t);
        }
      },
      f.target);
}

void set_from_json(const Field& f, const nlohmann::json& v) {
  std::visit(
      [&](auto t) {
        using T = decltype(t);
        if constexpr (std::is_same_v<T, MethodRef>) {
          if (!v.is_string()) bad_value(f, v.dump(), "string");
          *t.m = method_from_string(v.get<std::string>());
        } else if constexpr (std::is_same_v<T, double*>) {
          if (!v.is_number()) bad_value(f, v.dump(), "number");
          *t = v.get<double>();
        } else if constexpr (std::is_same_v<T, int*>) {
          if (!v.is_number_integer()) bad_value(f, v.dump(), "integer");
          *t = v.get<int>();
        } else if constexpr (std::is_same_v<T, std::size_t*>) {
          if (!v.is_number_unsigned()) bad_value(f, v.dump(), "non-negative integer");
          *t = v.get<std::size_t>();
        } else if constexpr (std::is_same_v<T, bool*>) {
          if (!v.is_boolean()) bad_value(f, v.dump(), "boolean");
          *t = v.get<bool>();
        } else {
          if (!v.is_string()) bad_value(f, v.dump(), "string");
          *t = v.get<std::string>();
        }
      },
      f.target);
}

nlohmann::json get_json(const Field& f) {
  return std::visit(
      [](auto t) -> nlohmann::json {
        if constexpr (std::is_same_v<decltype(t), MethodRef>) {
          return "rk4-hermite";
        } else {
          return *t;
        }
      },
      f.target);
}

const Field* find_field(const std::vector<Field>& fs, const std::string& section,
                        const std::string& key) {
  bool known_section = false;
  for (const auto& f : fs) {
    if (section == f.section) {
      known_section = true;
      if (key == f.key) return &f;
    }
  }
  if (!known_section) throw ConfigError(fmt::format("unknown config section [{}]", section));
  throw ConfigError(fmt::format("unknown config key '{}' in section [{}]", key, section));
}

void wrap_validate(const char* section, auto&& fn) {
  try {
    fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(fmt::format("[{}] {}", section, e.what()));
  }
}

}  // namespace

std::vector<double> AnalysisSettings::kleak_grid() const {
  return gba::kleak_grid(kleak_start, kleak_stop, kleak_step);
}

std::vector<double> AnalysisSettings::capacity_kleak_grid() const {
  return gba::kleak_grid(capacity_kleak_start, capacity_kleak_stop, capacity_kleak_step);
}

SweepOptions AnalysisSettings::sweep_options(const StateVector& initial_state,
                                             unsigned jobs) const {
  SweepOptions o;
  o.dampened_below = dampened_below;
  o.disrupted_below = disrupted_below;
  o.window_start = window_start;
  o.window_end = window_end;
  o.resolution = threshold_resolution;
  o.initial_state = initial_state;
  o.jobs = jobs;
  return o;
}

void RunConfig::validate() const {
  wrap_validate("parameters", [&] { parameters.validate(); });
  wrap_validate("circadian", [&] { circadian.validate(); });
  wrap_validate("integrator", [&] { integrator.validate(parameters); });
  wrap_validate("scenario", [&] {
    for (std::size_t i = 0; i < kStateDim; ++i) {
      if (!(scenario.initial_state[i] >= 0.0)) {
        throw ConfigError(fmt::format("[scenario] initial_{} must be >= 0", kSpeciesNames[i]));
      }
    }
    scenario.profile(ScenarioKind::Acute).validate();
    if (!(scenario.envelope_tolerance > 0.0) || !(scenario.envelope_window > 0.0) ||
        !(scenario.recovery_hold > 0.0) || !(scenario.final_window > 0.0)) {
      throw ConfigError("[scenario] windows and tolerances must be > 0");
    }
  });
  wrap_validate("analysis", [&] {
    analysis.sweep_options(scenario.initial_state, 1).validate();
    (void)analysis.kleak_grid();
    (void)analysis.capacity_kleak_grid();
    (void)log_grid(analysis.f_min, analysis.f_max, analysis.points);
    NoiseModel{NoiseModel::Kind::White, analysis.noise_level}.validate();
    if (!(analysis.power_budget > 0.0)) throw ConfigError("[analysis] power_budget must be > 0");
    if (!(analysis.kleak >= 0.0)) throw ConfigError("[analysis] kleak must be >= 0");
    (void)decade_range(analysis.noise_level, analysis.sweep_decades, analysis.sweep_points);
  });
}

RunConfig parse_ini(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(fmt::format("malformed INI: {}", e.message()));
  }
  RunConfig cfg;
  const auto fs = fields(cfg);
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(fmt::format("key '{}' appears outside any section", section));
    }
    for (const auto& [key, value] : body) {
      set_from_text(*find_field(fs, section, key), value.data());
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig parse_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(fmt::format("malformed JSON: {}", e.what()));
  }
  if (!doc.is_object()) throw ConfigError("JSON config must be an object of sections");
  RunConfig cfg;
  const auto fs = fields(cfg);
  for (const auto& [section, body] : doc.items()) {
    if (!body.is_object()) {
      throw ConfigError(fmt::format("JSON section '{}' must be an object", section));
    }
    for (const auto& [key, value] : body.items()) {
      set_from_json(*find_field(fs, section, key), value);
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return path.extension() == ".json" ? parse_json(ss.str()) : parse_ini(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::string to_ini(const RunConfig& cfg) {
  RunConfig copy = cfg;
  std::string out;
  std::string current;
  for (const auto& f : fields(copy)) {
    if (current != f.section) {
      if (!current.empty()) out += "\n";
      current = f.section;
      out += fmt::format("[{}]\n", current);
    }
    out += fmt::format("{} = {}\n", f.key, get_text(f));
  }
  return out;
}

std::string to_json(const RunConfig& cfg) {
  RunConfig copy = cfg;
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& f : fields(copy)) doc[f.section][f.key] = get_json(f);
  return doc.dump(2) + "\n";
}

}  // namespace gba
