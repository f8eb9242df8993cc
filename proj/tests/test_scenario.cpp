#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gba/bifurcation.hpp"
#include "gba/error.hpp"
#include "gba/scenario.hpp"

namespace {

gba::TimeSeries synthetic(double spacing, double horizon, double bump_from, double bump_to,
                          double bump) {
  gba::TimeSeries ts;
  for (double t = 0.0; t <= horizon + 1e-9; t += spacing) {
    gba::StateVector x;
    x.C = 10.0 + 2.0 * std::sin(2.0 * std::numbers::pi * t / 1440.0);
    if (t >= bump_from && t <= bump_to) x.C += bump;
    ts.t.push_back(t);
    ts.x.push_back(x);
    ts.u.push_back(0.1);
    ts.E.push_back(1.0);
  }
  return ts;
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("named scenarios are deterministic") {
  const auto p = gba::ModelParameters::defaults();
  const gba::CircadianDrive drive;
  const gba::IntegratorConfig cfg;
  for (auto kind : {gba::ScenarioKind::Healthy, gba::ScenarioKind::Acute}) {
    const auto a = gba::run_scenario(kind, p, drive, cfg);
    const auto b = gba::run_scenario(kind, p, drive, cfg);
    CHECK(a.trajectory.x == b.trajectory.x);
    CHECK(a.cortisol_amplitude == b.cortisol_amplitude);
    CHECK(a.recovery_time == b.recovery_time);
  }
}

TEST_CASE("scenario inputs") {
  const gba::ScenarioSettings s;
  const auto acute = s.profile(gba::ScenarioKind::Acute);
  CHECK(acute.value(2879.0) == 0.1);
  CHECK(acute.value(2880.0) == 3.0);
  CHECK(acute.value(3599.0) == 3.0);
  CHECK(acute.value(3600.0) == 0.1);
  const auto chronic = s.profile(gba::ScenarioKind::Chronic);
  CHECK(chronic.value(14400.0) == 3.0);
  CHECK(s.profile(gba::ScenarioKind::Healthy).value(5000.0) == 0.1);
  CHECK(gba::scenario_from_string("acute") == gba::ScenarioKind::Acute);
  CHECK_THROWS_AS(gba::scenario_from_string("severe"), gba::InvalidArgument);
}

TEST_CASE("envelope recovery on a synthetic bump") {
  // A bump ending at t_end keeps the trailing envelope disturbed until the
  // window has slid past it: recovery = t_end + window - t_from.
  const double t_from = 3000.0, t_end = 3500.0, window = 1440.0;
  const auto ref = synthetic(1.0, 10000.0, 0.0, -1.0, 0.0);
  const auto hit = synthetic(1.0, 10000.0, 2800.0, t_end, 5.0);
  const auto r = gba::envelope_recovery_time(ref, hit, gba::Species::C, t_from, window, 0.05,
                                             1440.0);
  REQUIRE(r.has_value());
  CHECK(std::abs(*r - (t_end + window - t_from)) <= 1.0);

  const auto none = gba::envelope_recovery_time(ref, ref, gba::Species::C, t_from, window, 0.05,
                                                1440.0);
  REQUIRE(none.has_value());
  CHECK(*none == doctest::Approx(0.0));

  // A disturbance that never ends never recovers.
  const auto forever = synthetic(1.0, 10000.0, 2800.0, 20000.0, 5.0);
  CHECK_FALSE(gba::envelope_recovery_time(ref, forever, gba::Species::C, t_from, window, 0.05,
                                          1440.0)
                  .has_value());
}

TEST_CASE("healthy rhythm is circadian") {
  const auto r = gba::run_scenario(gba::ScenarioKind::Healthy, gba::ModelParameters::defaults(),
                                   gba::CircadianDrive{}, gba::IntegratorConfig{});
  REQUIRE(r.cortisol_period.has_value());
  CHECK(std::abs(*r.cortisol_period - 1440.0) <= 60.0);
  CHECK(r.window_start == 4320.0);
  CHECK(r.window_end == 14400.0);
}

TEST_CASE("chronic burden is monotone in the stress level") {
  const auto p = gba::ModelParameters::defaults();
  gba::ScenarioSettings s;
  double previous = -1.0;
  for (double k : gba::default_kleak_grid()) {
    s.elevated = k;
    const auto r = gba::run_scenario(gba::ScenarioKind::Chronic, p, gba::CircadianDrive{},
                                     gba::IntegratorConfig{}, s);
    CAPTURE(k);
    CHECK(r.final_mean_cortisol >= previous);
    previous = r.final_mean_cortisol;
  }
}

TEST_CASE("acute pulses below the first threshold recover") {
  const auto p = gba::ModelParameters::defaults();
  const gba::CircadianDrive drive;
  const gba::IntegratorConfig cfg;
  const gba::SweepOptions opts;
  const auto reference = gba::simulate_point(0.0, p, drive, cfg, opts);
  for (double k : {0.3, 0.6, 0.9}) {
    // Only pulses whose constant-stress regime is still rhythmic qualify.
    const auto point = gba::simulate_point(k, p, drive, cfg, opts);
    REQUIRE(gba::classify(point.amplitude, reference.amplitude, opts) ==
            gba::Regime::HealthyRhythm);
    gba::ScenarioSettings s;
    s.elevated = k;
    const auto r = gba::run_scenario(gba::ScenarioKind::Acute, p, drive, cfg, s);
    CAPTURE(k);
    CHECK(r.recovery_time.has_value());
  }
}

}  // TEST_SUITE
