#include <doctest.h>

#include <cmath>
#include <vector>

#include "gba/error.hpp"
#include "gba/history.hpp"

using gba::HistoryBuffer;

TEST_SUITE("history") {

TEST_CASE("hermite reproduces cubics exactly") {
  auto p = [](double t) { return 2.0 - 3.0 * t + 0.5 * t * t - 0.25 * t * t * t; };
  auto dp = [](double t) { return -3.0 + t - 0.75 * t * t; };
  const double t0 = 0.3, t1 = 1.7;
  for (double t = t0; t <= t1; t += 0.05) {
    CHECK(gba::hermite(t0, p(t0), dp(t0), t1, p(t1), dp(t1), t) ==
          doctest::Approx(p(t)).epsilon(1e-13));
  }
}

TEST_CASE("hermite hits the knots") {
  CHECK(gba::hermite(0.0, 1.0, 5.0, 2.0, -3.0, 7.0, 0.0) == 1.0);
  CHECK(gba::hermite(0.0, 1.0, 5.0, 2.0, -3.0, 7.0, 2.0) == doctest::Approx(-3.0));
}

TEST_CASE("buffer serves prehistory, knots and interpolants") {
  HistoryBuffer buf(1, 0.0, 2.0, [](double t, std::span<double> out) { out[0] = 10.0 + t; });
  std::vector<double> x{1.0}, dx{2.0};
  buf.push(0.0, x, dx);
  x[0] = 3.0;
  dx[0] = 2.0;
  buf.push(1.0, x, dx);

  CHECK(buf.interpolate(-1.5)[0] == doctest::Approx(8.5));
  CHECK(buf.interpolate(0.0)[0] == 1.0);
  CHECK(buf.interpolate(1.0)[0] == 3.0);
  // linear data with consistent slopes interpolates linearly
  CHECK(buf.interpolate(0.25)[0] == doctest::Approx(1.5));
  CHECK(buf.t_now() == 1.0);
  CHECK(buf.t_oldest() == -2.0);
}

TEST_CASE("buffer rejects queries outside its range and bad pushes") {
  HistoryBuffer buf(1, 0.0, 1.0, gba::constant_prehistory({1.0}));
  std::vector<double> x{1.0}, dx{0.0};
  buf.push(0.0, x, dx);
  buf.push(0.5, x, dx);
  CHECK_THROWS_AS(buf.interpolate(-1.01), gba::HistoryRangeError);
  CHECK_THROWS_AS(buf.interpolate(0.51), gba::HistoryRangeError);
  CHECK_THROWS_AS(buf.push(0.5, x, dx), gba::Error);
  CHECK_THROWS_AS(buf.push(0.25, x, dx), gba::Error);
}

}
