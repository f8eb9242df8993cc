#include <doctest.h>

#include <cmath>

#include "gba/error.hpp"
#include "gba/integrator.hpp"
#include "gba/steady_state.hpp"
#include "oracles.hpp"

using gba::Matrix6;
using gba::StateVector;

namespace {

void check_close(const Matrix6& got, const Matrix6& want) {
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(oracle::jacobian_close(got(i, j), want(i, j)));
    }
  }
}

}  // namespace

TEST_SUITE("steady_state") {

TEST_CASE("equilibrium residual vanishes on direct substitution") {
  const auto p = gba::ModelParameters::defaults();
  for (double u : {0.1, 1.0, 3.0}) {
    const auto x = gba::find_equilibrium(p, gba::CircadianDrive{}, u);
    const auto r = gba::rhs(0.0, x, {x, x}, u, 1.0, p);
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(r[i]) <= 1e-10);
  }
}

TEST_CASE("equilibrium agrees with a long frozen-drive simulation") {
  const auto p = gba::ModelParameters::defaults();
  const gba::CircadianDrive drive;
  const auto x = gba::find_equilibrium(p, drive, 0.1);
  gba::IntegratorConfig cfg;
  cfg.horizon = 20.0 * 1440.0;
  cfg.output_spacing = 1440.0;
  const auto ts = gba::integrate(p, drive.frozen(), gba::InputProfile::constant(0.1),
                                 gba::EquilibriumOptions{}.warmup_initial_state, cfg);
  const auto& end = ts.x.back();
  for (std::size_t i = 0; i < 6; ++i) {
    CAPTURE(i);
    CHECK(std::abs(end[i] - x[i]) <= 1e-6);
  }
}

TEST_CASE("decoupled equilibrium is the bare HPA fixed point") {
  auto p = gba::ModelParameters::defaults();
  p.d = {};
  p.k_damage = 0.0;
  const auto x = gba::find_equilibrium(p, gba::CircadianDrive{}, 0.0);
  const auto [A, C] = oracle::bare_hpa_equilibrium(p);
  CHECK(x.P == doctest::Approx(0.0));
  CHECK(x.T == doctest::Approx(0.0));
  CHECK(x.S == doctest::Approx(0.0));
  CHECK(x.L == doctest::Approx(p.L_base).epsilon(1e-12));
  CHECK(x.A == doctest::Approx(A).epsilon(1e-9));
  CHECK(x.C == doctest::Approx(C).epsilon(1e-9));
}

TEST_CASE("jacobians match a higher-order difference oracle") {
  const auto p = gba::ModelParameters::defaults();
  const double u = 0.1;
  const auto x = gba::find_equilibrium(p, gba::CircadianDrive{}, u);
  const auto sys = gba::linearize(p, gba::CircadianDrive{}, x, u);
  check_close(sys.J0, oracle::jacobian(p, x, u, oracle::Arg::Now));
  check_close(sys.J_hpa, oracle::jacobian(p, x, u, oracle::Arg::Hpa));
  check_close(sys.J_gut, oracle::jacobian(p, x, u, oracle::Arg::Gut));
}

TEST_CASE("delayed jacobians and input vector have the structural pattern") {
  const auto p = gba::ModelParameters::defaults();
  const auto sys = gba::operating_point(p, gba::CircadianDrive{}, 0.1);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      const bool hpa = (i == 3 && j == 4) || (i == 4 && j == 3);
      const bool gut = i == 5 && j == 4;
      if (!hpa) CHECK(sys.J_hpa(i, j) == 0.0);
      if (!gut) CHECK(sys.J_gut(i, j) == 0.0);
    }
  }
  CHECK(sys.J_hpa(3, 4) < 0.0);  // cortisol inhibits ACTH release
  CHECK(sys.J_hpa(4, 3) > 0.0);
  CHECK(sys.J_gut(5, 4) > 0.0);
  CHECK(sys.B[0] == sys.x_star.L);
  for (int i = 1; i < 6; ++i) CHECK(sys.B[i] == 0.0);
  CHECK(sys.J0(0, 5) == doctest::Approx(0.1).epsilon(1e-8));  // u* couples L into P
}

TEST_CASE("hill derivative at half saturation") {
  const auto p = gba::ModelParameters::defaults();
  StateVector x{0.2, 0.05, 0.5, 15.0, p.C_half, 0.12};
  const auto sys = gba::linearize(p, gba::CircadianDrive{}, x, 0.1);
  CHECK(sys.J_gut(5, 4) ==
        doctest::Approx(p.k_damage * p.n_gut / (4.0 * p.C_half)).epsilon(1e-8));
}

TEST_CASE("pure decay diagonal when couplings vanish") {
  auto p = gba::ModelParameters::defaults();
  p.d = {};
  p.k = 0.0;
  const StateVector x{0.3, 0.2, 0.1, 15.0, 10.0, 0.1};
  const auto sys = gba::linearize(p, gba::CircadianDrive{}, x, 0.0);
  const double want[6] = {-p.eP, -p.eT, -p.eS, -p.eA, -p.eC, -p.k_repair};
  for (int i = 0; i < 6; ++i) CHECK(sys.J0(i, i) == doctest::Approx(want[i]).epsilon(1e-8));
}

TEST_CASE("dc gain equals the slope of the equilibrium curve") {
  const auto p = gba::ModelParameters::defaults();
  const gba::CircadianDrive drive;
  for (double u : {0.1, 1.0}) {
    const auto sys = gba::operating_point(p, drive, u);
    const double du = 0.005 * u;
    const double slope = (gba::find_equilibrium(p, drive, u + du).C -
                          gba::find_equilibrium(p, drive, u - du).C) /
                         (2 * du);
    CAPTURE(u);
    CHECK(std::abs(sys.dc_gain() - slope) <= 0.02 * std::abs(slope));
  }
}

TEST_CASE("stability probe") {
  const auto p = gba::ModelParameters::defaults();
  const gba::CircadianDrive drive;
  const auto healthy = gba::operating_point(p, drive, 0.1);
  CHECK(healthy.stability == gba::Stability::Stable);

  // Without the cytokine drive into the HPA axis its delayed feedback loop
  // oscillates, so the bare equilibrium is unstable.
  auto bare = p;
  bare.d[4] = 0.0;
  bare.d[5] = 0.0;
  const auto x = gba::find_equilibrium(bare, drive, 0.1);
  const auto probe = gba::probe_stability(bare, drive, x, 0.1);
  CHECK_FALSE(probe.stable);
  CHECK(probe.window_deviation.size() == 3);
  CHECK(gba::operating_point(bare, drive, 0.1).stability == gba::Stability::Unstable);
}

TEST_CASE("probe is reproducible") {
  const auto p = gba::ModelParameters::defaults();
  const auto x = gba::find_equilibrium(p, gba::CircadianDrive{}, 0.1);
  const auto a = gba::probe_stability(p, gba::CircadianDrive{}, x, 0.1);
  const auto b = gba::probe_stability(p, gba::CircadianDrive{}, x, 0.1);
  CHECK(a.window_deviation == b.window_deviation);
}

TEST_CASE("bad equilibrium inputs") {
  const auto p = gba::ModelParameters::defaults();
  CHECK_THROWS_AS(gba::find_equilibrium(p, gba::CircadianDrive{}, -1.0), gba::InvalidArgument);
  gba::EquilibriumOptions opts;
  opts.max_iterations = 0;
  opts.start = StateVector{1, 1, 1, 1, 1, 1};
  CHECK_THROWS_AS(gba::find_equilibrium(p, gba::CircadianDrive{}, 0.1, opts),
                  gba::ConvergenceError);
}

}  // TEST_SUITE
