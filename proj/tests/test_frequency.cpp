#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "gba/error.hpp"
#include "gba/frequency.hpp"
#include "gba/integrator.hpp"

using cd = std::complex<double>;

namespace {

gba::DelaySystem scalar(double a0, double a_delay = 0.0, double tau = 0.0, double b = 1.0) {
  gba::DelaySystem s;
  s.J0 = Eigen::MatrixXd::Constant(1, 1, a0);
  if (a_delay != 0.0) s.delayed.push_back({tau, Eigen::MatrixXd::Constant(1, 1, a_delay)});
  s.B = Eigen::VectorXd::Constant(1, b);
  s.C = Eigen::RowVectorXd::Constant(1, 1.0);
  return s;
}

bool close(cd a, cd b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

const gba::LinearizedSystem& healthy() {
  static const auto sys =
      gba::operating_point(gba::ModelParameters::defaults(), gba::CircadianDrive{}, 0.1);
  return sys;
}

const gba::LinearizedSystem& chronic() {
  static const auto sys =
      gba::operating_point(gba::ModelParameters::defaults(), gba::CircadianDrive{}, 3.0);
  return sys;
}

}  // namespace

TEST_SUITE("frequency") {

TEST_CASE("one-state low-pass matches 1/(lambda + j omega)") {
  const double lambda = 0.03;
  const auto sys = scalar(-lambda);
  for (double w : gba::log_grid(1e-5, 10.0, 50)) {
    const cd want = 1.0 / cd(lambda, w);
    const cd got = gba::transfer_function(sys, w);
    CHECK(std::abs(std::abs(got) - std::abs(want)) <= 1e-12 * std::abs(want));
    CHECK(std::abs(std::arg(got) - std::arg(want)) <= 1e-12);
  }
}

TEST_CASE("pure delayed self-term") {
  const double kappa = 0.02, tau = 30.0;
  const auto sys = scalar(0.0, -kappa, tau);
  for (double w : gba::log_grid(1e-4, 1.0, 50)) {
    const cd want = 1.0 / (cd(0.0, w) + kappa * std::exp(cd(0.0, -w * tau)));
    CHECK(close(gba::transfer_function(sys, w), want, 1e-12));
  }
}

TEST_CASE("one-pole half-power bandwidth") {
  const double w0 = 0.01;
  const auto sys = scalar(-w0, 0.0, 0.0, w0);
  const auto fr = gba::bode(sys, 1e-6, 1.0, 400);
  REQUIRE(fr.omega_3db.has_value());
  CHECK(std::abs(*fr.omega_3db - w0) <= 1e-3 * w0);
  CHECK(fr.dc_gain == doctest::Approx(1.0).epsilon(1e-12));
  // atan(1e-6 / w0) in degrees at the first grid point
  CHECK(std::abs(fr.phase_deg.front()) < 6e-3);
}

TEST_CASE("missing crossing leaves a hint") {
  const auto fr = gba::bode(scalar(-1.0), 1e-6, 1e-3, 50);
  CHECK_FALSE(fr.omega_3db.has_value());
  CHECK(fr.note.find("widen") != std::string::npos);
}

TEST_CASE("negative dc gain starts the phase at 180 degrees") {
  const auto fr = gba::bode(scalar(-0.01, 0.0, 0.0, -1.0), 1e-7, 1.0, 200);
  CHECK(std::abs(std::abs(fr.phase_deg.front()) - 180.0) < 1e-2);
}

TEST_CASE("numerically singular systems report the frequency") {
  const auto sys = scalar(0.0);
  try {
    gba::transfer_function(sys, 0.0);
    FAIL("expected SingularSystem");
  } catch (const gba::SingularSystem& e) {
    CHECK(e.omega() == 0.0);
  }
}

TEST_CASE("shape validation") {
  auto sys = scalar(-1.0);
  sys.B = Eigen::VectorXd::Ones(2);
  CHECK_THROWS_AS(gba::transfer_function(sys, 1.0), gba::InvalidArgument);
  CHECK_THROWS_AS(gba::log_grid(0.0, 1.0, 10), gba::InvalidArgument);
  CHECK_THROWS_AS(gba::log_grid(1.0, 0.5, 10), gba::InvalidArgument);
}

TEST_CASE("phase unwrapping") {
  const std::vector<double> wrapped{3.0, -3.0, 3.0, -3.0};
  const auto u = gba::unwrap_phase(wrapped);
  for (std::size_t i = 1; i < u.size(); ++i) CHECK(std::abs(u[i] - u[i - 1]) < std::numbers::pi);
}

TEST_CASE("model transfer function refuses unchecked operating points") {
  auto sys = healthy();
  sys.stability = gba::Stability::Unchecked;
  CHECK_THROWS_AS(gba::transfer_function(sys, 0.01), gba::UnstableOperatingPoint);
  sys.stability = gba::Stability::Unstable;
  CHECK_THROWS_AS(gba::bode(sys), gba::UnstableOperatingPoint);
}

TEST_CASE("zero frequency reproduces the dc gain") {
  const auto& sys = healthy();
  const cd h0 = gba::transfer_function(sys, 0.0);
  CHECK(h0.real() == doctest::Approx(sys.dc_gain()).epsilon(1e-10));
  CHECK(std::abs(h0.imag()) <= 1e-12 * std::abs(h0.real()));
  const auto fr = gba::bode(sys);
  CHECK(std::abs(std::abs(fr.H.front()) - std::abs(fr.dc_gain)) <= 0.01 * std::abs(fr.dc_gain));
}

TEST_CASE("conjugate symmetry") {
  const auto ds = gba::to_delay_system(healthy());
  for (double w : gba::log_grid(1e-5, 1.0, 20)) {
    CHECK(close(gba::transfer_function(ds, -w), std::conj(gba::transfer_function(ds, w)), 1e-12));
  }
}

TEST_CASE("low-pass character at stable operating points") {
  for (const auto* sys : {&healthy(), &chronic()}) {
    const double h0 = std::abs(gba::transfer_function(*sys, 0.0));
    CHECK(std::abs(gba::transfer_function(*sys, 1.0)) < 0.01 * h0);
  }
}

TEST_CASE("chronic stress narrows the channel") {
  const auto h = gba::bode(healthy());
  const auto c = gba::bode(chronic());
  REQUIRE(h.omega_3db.has_value());
  REQUIRE(c.omega_3db.has_value());
  CHECK(*h.omega_3db > *c.omega_3db);
  CHECK(std::abs(h.dc_gain) > std::abs(c.dc_gain));
}

TEST_CASE("delays add phase lag") {
  auto ds = gba::to_delay_system(healthy());
  const auto grid = gba::log_grid(1e-5, 1.0, 400);
  const auto with = gba::frequency_response(ds, grid);
  for (auto& term : ds.delayed) term.tau = 0.0;
  const auto without = gba::frequency_response(ds, grid);
  const double lag_with = with.phase_deg.front() - with.phase_deg.back();
  const double lag_without = without.phase_deg.front() - without.phase_deg.back();
  CHECK(lag_with > lag_without);
}

TEST_CASE("parallel evaluation is identical to serial") {
  const auto ds = gba::to_delay_system(healthy());
  const auto grid = gba::log_grid(1e-6, 1.0, 200);
  const auto a = gba::frequency_response(ds, grid, 1);
  const auto b = gba::frequency_response(ds, grid, 4);
  CHECK(a.H == b.H);
  CHECK(a.omega_3db == b.omega_3db);
}

TEST_CASE("small step in the leak rate moves cortisol by H(0) du") {
  const auto p = gba::ModelParameters::defaults();
  const gba::CircadianDrive drive;
  const auto& sys = healthy();
  const double du = 1e-3 * sys.u_star;
  gba::IntegratorConfig cfg;
  cfg.horizon = 30.0 * 1440.0;
  cfg.output_spacing = 1440.0;
  const auto ts = gba::integrate(p, drive.frozen(), gba::InputProfile::constant(sys.u_star + du),
                                 sys.x_star, cfg);
  const double offset = ts.x.back().C - sys.x_star.C;
  CHECK(std::abs(offset - sys.dc_gain() * du) <= 0.02 * std::abs(sys.dc_gain() * du));
}

TEST_CASE("csv layout") {
  const auto fr = gba::bode(scalar(-0.1), 1e-3, 1.0, 3);
  std::ostringstream os;
  gba::write_csv(os, fr);
  const auto text = os.str();
  CHECK(text.rfind("omega,reH,imH,mag_db,phase_deg\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

}  // TEST_SUITE
