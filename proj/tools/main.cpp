// gba: command-line driver for the gut-brain-axis channel model.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "gba/atomic_file.hpp"
#include "gba/bifurcation.hpp"
#include "gba/capacity.hpp"
#include "gba/config.hpp"
#include "gba/error.hpp"
#include "gba/frequency.hpp"
#include "gba/plot.hpp"
#include "gba/scenario.hpp"
#include "gba/serialize.hpp"
#include "gba/steady_state.hpp"

namespace fs = std::filesystem;

namespace {

constexpr const char* kOutputEnv = "GBA_OUTPUT_DIR";

struct Options {
  std::string config_path;
  std::string out_dir;
  unsigned jobs = 0;
  bool svg = false;

  std::string scenario = "healthy";
  std::string grid;
  double kleak = -1.0;
  double fmin = -1.0;
  double fmax = -1.0;
  std::size_t points = 0;
  double noise = -1.0;
  double power = -1.0;
  bool per_second = false;
};

// Raised for problems with the command line itself (exit status 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tags domain errors with the pipeline stage that raised them.
struct StageError : std::runtime_error {
  StageError(const std::string& stage, const std::string& what)
      : std::runtime_error(fmt::format("{}: {}", stage, what)) {}
};

template <typename Fn>
auto stage(const char* name, Fn&& fn) {
  try {
    return fn();
  } catch (const gba::ConfigError&) {
    throw;
  } catch (const gba::Error& e) {
    throw StageError(name, e.what());
  }
}

std::vector<double> parse_grid(const std::string& text) {
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw UsageError(fmt::format("bad number '{}' in grid '{}'", s, text));
    }
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw UsageError("grid ranges are written start:stop:step");
    try {
      return gba::kleak_grid(number(parts[0]), number(parts[1]), number(parts[2]));
    } catch (const gba::InvalidArgument& e) {
      throw UsageError(e.what());
    }
  }
  std::vector<double> g;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) g.push_back(number(p));
  if (g.empty()) throw UsageError("empty grid");
  return g;
}

class Runner {
 public:
  Runner(const Options& opt, gba::RunConfig cfg) : opt_(opt), cfg_(std::move(cfg)) {
    if (!opt_.out_dir.empty()) {
      out_ = opt_.out_dir;
    } else if (!cfg_.output.directory.empty()) {
      out_ = cfg_.output.directory;
    } else if (const char* env = std::getenv(kOutputEnv); env && *env) {
      out_ = env;
    } else {
      out_ = "gba-output";
    }
    cfg_.output.directory = out_.string();
    if (opt_.svg) cfg_.output.svg = true;
  }

  void write(const std::string& name, const std::string& content) {
    gba::write_file_atomic(out_ / name, content);
    std::cout << "wrote " << (out_ / name).string() << "\n";
  }

  template <typename W>
  std::string render(W&& writer) {
    std::ostringstream os;
    writer(os);
    return os.str();
  }

  void echo_config() { write("resolved_config.ini", gba::to_ini(cfg_)); }

  int simulate() {
    const auto kind = stage("scenario", [&] { return gba::scenario_from_string(opt_.scenario); });
    if (kind == gba::ScenarioKind::Custom) {
      throw UsageError("simulate supports --scenario healthy, acute or chronic");
    }
    echo_config();
    const auto report = stage("simulate", [&] {
      return gba::run_scenario(kind, cfg_.parameters, cfg_.circadian, cfg_.integrator,
                               cfg_.scenario);
    });
    const std::string base = "simulate_" + opt_.scenario;
    if (cfg_.output.csv) {
      write(base + ".csv", render([&](std::ostream& os) { gba::write_csv(os, report.trajectory); }));
    }
    if (cfg_.output.json) write(base + ".json", gba::scenario_json(report));
    if (cfg_.output.svg) write(base + ".svg", gba::timeseries_svg(report.trajectory));
    return 0;
  }

  int bifurcate() {
    const auto grid = opt_.grid.empty() ? cfg_.analysis.kleak_grid() : parse_grid(opt_.grid);
    echo_config();
    const auto result = stage("bifurcation", [&] {
      return gba::sweep(grid, cfg_.parameters, cfg_.circadian, cfg_.integrator,
                        cfg_.analysis.sweep_options(cfg_.scenario.initial_state, opt_.jobs));
    });
    if (result.anomaly) std::cerr << "warning: " << result.anomaly_note << "\n";
    if (cfg_.output.csv) {
      write("bifurcation.csv", render([&](std::ostream& os) { gba::write_sweep_csv(os, result); }));
    }
    if (cfg_.output.json) write("bifurcation.json", gba::sweep_json(result));
    if (cfg_.output.svg) write("bifurcation.svg", gba::bifurcation_svg(result));
    return 0;
  }

  gba::LinearizedSystem operating_point() {
    const double k = opt_.kleak >= 0.0 ? opt_.kleak : cfg_.analysis.kleak;
    return stage("steady-state", [&] {
      gba::EquilibriumOptions eq;
      eq.warmup_initial_state = cfg_.scenario.initial_state;
      return gba::operating_point(cfg_.parameters, cfg_.circadian, k, eq);
    });
  }

  void require_stable(const gba::LinearizedSystem& sys) {
    if (sys.stability != gba::Stability::Stable) {
      throw StageError("steady-state",
                       fmt::format("unstable operating point at k_leak = {}; the small-signal "
                                   "transfer function is undefined there",
                                   sys.u_star));
    }
  }

  gba::FrequencyResponse response(const gba::LinearizedSystem& sys) {
    const double fmin = opt_.fmin > 0.0 ? opt_.fmin : cfg_.analysis.f_min;
    const double fmax = opt_.fmax > 0.0 ? opt_.fmax : cfg_.analysis.f_max;
    const std::size_t pts = opt_.points > 0 ? opt_.points : cfg_.analysis.points;
    return stage("bode", [&] { return gba::bode(sys, fmin, fmax, pts, opt_.jobs); });
  }

  int linearize() {
    echo_config();
    const auto sys = operating_point();
    write("linearization.json", gba::linearization_json(sys));
    return sys.stability == gba::Stability::Stable ? 0 : (require_stable(sys), 1);
  }

  int bode() {
    echo_config();
    const auto sys = operating_point();
    require_stable(sys);
    const auto fr = response(sys);
    if (!fr.omega_3db) std::cerr << "warning: " << fr.note << "\n";
    if (cfg_.output.csv) write("bode.csv", render([&](std::ostream& os) { gba::write_csv(os, fr); }));
    if (cfg_.output.json) write("bode.json", gba::frequency_json(fr, sys));
    if (cfg_.output.svg) write("bode.svg", gba::bode_svg(fr));
    return 0;
  }

  gba::NoiseModel noise() const {
    return {gba::NoiseModel::Kind::White, opt_.noise > 0.0 ? opt_.noise : cfg_.analysis.noise_level};
  }
  double power() const { return opt_.power > 0.0 ? opt_.power : cfg_.analysis.power_budget; }
  double time_scale() const { return opt_.per_second ? 1.0 / 60.0 : 1.0; }

  int capacity() {
    echo_config();
    const auto sys = operating_point();
    require_stable(sys);
    const auto fr = response(sys);
    const auto nm = noise();
    const auto sweeps = stage("capacity", [&] {
      return gba::capacity_sweeps(
          fr, nm, power(),
          gba::decade_range(nm.level, cfg_.analysis.sweep_decades, cfg_.analysis.sweep_points),
          gba::decade_range(power(), cfg_.analysis.sweep_decades, cfg_.analysis.sweep_points));
    });
    const auto& c = sweeps.nominal;
    if (!c.warning.empty()) std::cerr << "warning: " << c.warning << "\n";
    const double ts = time_scale();
    if (cfg_.output.csv) {
      write("capacity.csv", render([&](std::ostream& os) { gba::write_capacity_csv(os, c, ts); }));
      write("capacity_vs_noise.csv", render([&](std::ostream& os) {
              gba::write_curve_csv(os, sweeps.versus_noise, "noise_level", ts);
            }));
      write("capacity_vs_power.csv", render([&](std::ostream& os) {
              gba::write_curve_csv(os, sweeps.versus_power, "power_budget", ts);
            }));
    }
    if (cfg_.output.json) {
      write("capacity.json", gba::capacity_json(c, nm, power(), sys.u_star, ts));
      write("capacity_sweeps.json", gba::capacity_sweeps_json(sweeps, ts));
    }
    if (cfg_.output.svg) write("capacity.svg", gba::capacity_svg(c, ts));
    std::cout << fmt::format("capacity = {:.17g} {}\n", c.capacity_total * ts,
                             opt_.per_second ? "bits/s" : "bits/min");
    return 0;
  }

  int capacity_sweep() {
    const auto grid =
        opt_.grid.empty() ? cfg_.analysis.capacity_kleak_grid() : parse_grid(opt_.grid);
    echo_config();
    const auto curve = stage("capacity", [&] {
      return gba::capacity_vs_stress(grid, cfg_.parameters, cfg_.circadian, noise(), power(),
                                     cfg_.analysis.spectrum(), opt_.jobs);
    });
    for (const auto& p : curve) {
      if (!p.error.empty()) std::cerr << fmt::format("warning: k_leak = {}: {}\n", p.k_leak, p.error);
    }
    const double ts = time_scale();
    if (cfg_.output.csv) {
      write("capacity_vs_stress.csv",
            render([&](std::ostream& os) { gba::write_capacity_curve_csv(os, curve, ts); }));
    }
    if (cfg_.output.json) write("capacity_vs_stress.json", gba::capacity_curve_json(curve, ts));
    if (cfg_.output.svg) write("capacity_vs_stress.svg", gba::capacity_curve_svg(curve, ts));
    return 0;
  }

 private:
  Options opt_;
  gba::RunConfig cfg_;
  fs::path out_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gut-brain-axis closed-loop model: simulation, linear analysis and capacity"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--config", opt.config_path, "INI or JSON run configuration")
      ->check(CLI::ExistingFile);
  app.add_option("--out", opt.out_dir,
                 fmt::format("output directory (default: config, then ${}, then ./gba-output)",
                             kOutputEnv));
  app.add_option("--jobs", opt.jobs, "worker threads (0 = all cores)");
  app.add_flag("--svg", opt.svg, "also write SVG plots");

  auto* sim = app.add_subcommand("simulate", "run a named stress scenario");
  sim->add_option("--scenario", opt.scenario, "healthy, acute or chronic")
      ->required()
      ->check(CLI::IsMember({"healthy", "acute", "chronic"}));

  auto* bif = app.add_subcommand("bifurcate", "sweep constant k_leak and locate thresholds");
  bif->add_option("--grid", opt.grid, "start:stop:step or a comma-separated list");

  auto* lin = app.add_subcommand("linearize", "equilibrium, Jacobians and stability");
  lin->add_option("--kleak", opt.kleak, "operating input")->check(CLI::NonNegativeNumber);

  auto* bod = app.add_subcommand("bode", "frequency response at an operating point");
  bod->add_option("--kleak", opt.kleak, "operating input")->check(CLI::NonNegativeNumber);
  bod->add_option("--fmin", opt.fmin, "lowest frequency (rad/min)")->check(CLI::PositiveNumber);
  bod->add_option("--fmax", opt.fmax, "highest frequency (rad/min)")->check(CLI::PositiveNumber);
  bod->add_option("--points", opt.points, "grid points")->check(CLI::Range(2, 1000000));

  auto* cap = app.add_subcommand("capacity", "water-filling capacity at an operating point");
  auto* sweep = app.add_subcommand("capacity-sweep", "capacity against k_leak");
  for (auto* sc : {cap, sweep}) {
    sc->add_option("--noise", opt.noise, "white noise PSD")->check(CLI::PositiveNumber);
    sc->add_option("--power", opt.power, "input power budget")->check(CLI::PositiveNumber);
    sc->add_flag("--per-second", opt.per_second, "report bits/s instead of bits/min");
  }
  cap->add_option("--kleak", opt.kleak, "operating input")->check(CLI::NonNegativeNumber);
  sweep->add_option("--kleak-grid", opt.grid, "start:stop:step or a comma-separated list");

  auto* val = app.add_subcommand("validate-config", "check a config and print it fully resolved");

  for (auto* sc : {sim, bif, lin, bod, cap, sweep, val}) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    gba::RunConfig cfg = opt.config_path.empty() ? gba::RunConfig{} : gba::load_config(opt.config_path);
    cfg.validate();
    if (*val) {
      std::cout << gba::to_ini(cfg);
      return 0;
    }
    Runner run(opt, std::move(cfg));
    if (*sim) return run.simulate();
    if (*bif) return run.bifurcate();
    if (*lin) return run.linearize();
    if (*bod) return run.bode();
    if (*cap) return run.capacity();
    if (*sweep) return run.capacity_sweep();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const gba::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const StageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const gba::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
