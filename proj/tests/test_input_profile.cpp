#include <doctest.h>

#include "gba/error.hpp"
#include "gba/input_profile.hpp"

using gba::InputProfile;

TEST_SUITE("input") {

TEST_CASE("pulse is right-continuous with left limits at the edges") {
  const auto p = InputProfile::pulse(0.1, 3.0, 2880.0, 3600.0);
  CHECK(p.value(2879.0) == 0.1);
  CHECK(p.value(2880.0) == 3.0);
  CHECK(p.left_limit(2880.0) == 0.1);
  CHECK(p.value(3600.0) == 0.1);
  CHECK(p.left_limit(3600.0) == 3.0);
  CHECK(p.breakpoints() == std::vector<double>{2880.0, 3600.0});
}

TEST_CASE("step and piecewise") {
  const auto s = InputProfile::step(0.1, 3.0, 2880.0);
  CHECK(s.value(1e6) == 3.0);
  CHECK(s.left_limit(2880.0) == 0.1);
  const auto w = InputProfile::piecewise({{10.0, 1.0}, {20.0, 2.0}, {30.0, 0.5}});
  CHECK(w.value(0.0) == 1.0);
  CHECK(w.value(25.0) == 2.0);
  CHECK(w.value(30.0) == 0.5);
  CHECK(w.left_limit(30.0) == 2.0);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(InputProfile::constant(-1.0), gba::InvalidArgument);
  CHECK_THROWS_AS(InputProfile::pulse(0.1, 3.0, 10.0, 5.0), gba::InvalidArgument);
  CHECK_THROWS_AS(InputProfile::piecewise({{2.0, 1.0}, {1.0, 2.0}}), gba::InvalidArgument);
  CHECK_THROWS_AS(InputProfile::piecewise({}), gba::InvalidArgument);
}

TEST_CASE("kind names round-trip") {
  for (auto k : {InputProfile::Kind::Constant, InputProfile::Kind::Pulse, InputProfile::Kind::Step,
                 InputProfile::Kind::Piecewise}) {
    CHECK(gba::input_kind_from_string(gba::to_string(k)) == k);
  }
}

}
