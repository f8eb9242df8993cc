#include <doctest.h>

#include <cmath>
#include <vector>

#include "gba/error.hpp"
#include "gba/integrator.hpp"
#include "oracles.hpp"

namespace {

using oracle::scalar_dde;

gba::HistoryBuffer solve_scalar(double step, double horizon) {
  gba::DdeSystem sys;
  sys.dim = 1;
  sys.delays = {1.0};
  sys.rhs = [](gba::StageTime, std::span<const double>, std::span<const double> lag,
               std::span<double> out) { out[0] = -lag[0]; };
  return gba::solve_dde(sys, gba::constant_prehistory({1.0}), {0.0, step, horizon});
}

double max_error(const gba::HistoryBuffer& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    e = std::max(e, std::abs(b.knot_value(i)[0] - scalar_dde(b.knot_time(i))));
  }
  return e;
}

}  // namespace

TEST_SUITE("integrator") {

TEST_CASE("closed-form oracle pieces") {
  CHECK(scalar_dde(0.5) == doctest::Approx(0.5));
  CHECK(scalar_dde(1.5) == doctest::Approx(1.0 - 1.5 + 0.125));
  CHECK(scalar_dde(2.5) == doctest::Approx(1.0 - 2.5 + 1.125 - 0.125 / 6.0 * 1.0));
}

TEST_CASE("scalar delay equation matches the method-of-steps solution") {
  const auto b = solve_scalar(0.01, 3.0);
  for (double t : {0.5, 1.5, 2.0}) {
    CHECK(std::abs(b.interpolate(t)[0] - scalar_dde(t)) < 1e-6);
  }
}

TEST_CASE("step halving shows fourth-order convergence") {
  const double e1 = max_error(solve_scalar(0.2, 10.0));
  const double e2 = max_error(solve_scalar(0.1, 10.0));
  const double ratio = e1 / e2;
  MESSAGE("error ratio " << ratio);
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("solver argument checks") {
  gba::DdeSystem sys;
  sys.dim = 1;
  sys.delays = {0.5};
  sys.rhs = [](gba::StageTime, std::span<const double>, std::span<const double> lag,
               std::span<double> out) { out[0] = -lag[0]; };
  CHECK_THROWS_AS(gba::solve_dde(sys, gba::constant_prehistory({1.0}), {0.0, 1.0, 2.0}),
                  gba::InvalidArgument);
  CHECK_THROWS_AS(gba::solve_dde(sys, gba::constant_prehistory({1.0}), {0.0, 0.3, 1.0}),
                  gba::InvalidArgument);
}

TEST_CASE("blow-up is reported with its time") {
  gba::DdeSystem sys;
  sys.dim = 1;
  sys.delays = {1.0};
  sys.rhs = [](gba::StageTime, std::span<const double> x, std::span<const double>,
               std::span<double> out) { out[0] = x[0] * x[0]; };
  try {
    gba::solve_dde(sys, gba::constant_prehistory({1.0}), {0.0, 0.01, 5.0});
    FAIL("expected IntegrationError");
  } catch (const gba::IntegrationError& e) {
    CHECK(e.time() > 0.9);
    CHECK(e.time() < 1.1);
  }
}

TEST_CASE("model integration output grid") {
  const auto p = gba::ModelParameters::defaults();
  gba::IntegratorConfig cfg;
  cfg.horizon = 600.0;
  const auto ts = gba::integrate(p, {}, gba::InputProfile::constant(0.1),
                                 gba::StateVector{0.2, 0.1, 0.1, 10.0, 10.0, 0.1}, cfg);
  CHECK(ts.size() == 601);
  CHECK(ts.t.front() == 0.0);
  CHECK(ts.t.back() == 600.0);
  CHECK(ts.spacing() == 1.0);
  CHECK(ts.u[5] == 0.1);
  ts.validate();
}

TEST_CASE("integrator config validation") {
  const auto p = gba::ModelParameters::defaults();
  gba::IntegratorConfig cfg;
  cfg.step = 3.0;  // > tau_hpa / 4
  CHECK_THROWS_AS(cfg.validate(p), gba::InvalidArgument);
  cfg.step = 0.5;
  cfg.horizon = 100.25;
  CHECK_THROWS_AS(cfg.validate(p), gba::InvalidArgument);
  cfg.horizon = 100.0;
  CHECK_NOTHROW(cfg.validate(p));
}

TEST_CASE("negative initial state is rejected") {
  const auto p = gba::ModelParameters::defaults();
  gba::IntegratorConfig cfg;
  cfg.horizon = 10.0;
  CHECK_THROWS_AS(gba::integrate(p, {}, gba::InputProfile::constant(0.1),
                                 gba::StateVector{0.2, 0.1, -0.1, 10.0, 10.0, 0.1}, cfg),
                  gba::Error);
}

TEST_CASE("tiny negative round-off is clamped") {
  const auto p = gba::ModelParameters::defaults();
  gba::IntegratorConfig cfg;
  cfg.horizon = 10.0;
  const auto ts = gba::integrate(p, {}, gba::InputProfile::constant(0.1),
                                 gba::StateVector{0.2, 0.1, -1e-13, 10.0, 10.0, 0.1}, cfg);
  for (const auto& x : ts.x) CHECK(x.S >= 0.0);
}

}
