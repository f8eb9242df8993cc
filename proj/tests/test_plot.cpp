#include <doctest.h>

#include <string>

#include "gba/error.hpp"
#include "gba/plot.hpp"

namespace {

std::size_t count(const std::string& text, const std::string& what) {
  std::size_t n = 0;
  for (auto pos = text.find(what); pos != std::string::npos; pos = text.find(what, pos + 1)) ++n;
  return n;
}

gba::Panel panel(bool log_x) {
  gba::Panel p;
  p.title = "demo";
  p.x_label = "x";
  p.y_label = "y";
  p.log_x = log_x;
  p.series.push_back({"a", {1e-4, 1e-3, 1e-2, 1e-1}, {1.0, 2.0, 1.5, 0.5}});
  return p;
}

}  // namespace

TEST_SUITE("plot") {

TEST_CASE("output is deterministic and self-contained") {
  const auto a = gba::render_svg({panel(false), panel(true)});
  const auto b = gba::render_svg({panel(false), panel(true)});
  CHECK(a == b);
  CHECK(a.rfind("<?xml", 0) == 0);
  CHECK(a.find("<svg") != std::string::npos);
  CHECK(a.find("</svg>") != std::string::npos);
  CHECK(count(a, "<polyline") == 2);
  CHECK(a.find("demo") != std::string::npos);
}

TEST_CASE("log axis labels decades") {
  const auto svg = gba::render_svg({panel(true)});
  for (const char* tick : {">1e-4<", ">1e-3<", ">1e-2<", ">1e-1<"}) {
    CAPTURE(tick);
    CHECK(svg.find(tick) != std::string::npos);
  }
}

TEST_CASE("vertical rules carry their labels") {
  auto p = panel(false);
  p.vertical_rules = {0.05};
  p.rule_labels = {"threshold 1 = 0.05"};
  const auto svg = gba::render_svg({p});
  CHECK(count(svg, "class=\"rule\"") == 1);
  CHECK(svg.find("threshold 1 = 0.05") != std::string::npos);
}

TEST_CASE("empty data is rejected") {
  CHECK_THROWS_AS(gba::render_svg({}), gba::InvalidArgument);
  gba::Panel p;
  CHECK_THROWS_AS(gba::render_svg({p}), gba::InvalidArgument);
}

TEST_CASE("bifurcation figure marks both thresholds") {
  gba::SweepResult r;
  r.reference_amplitude = 2.0;
  r.threshold_1 = 1.5;
  r.threshold_2 = 2.0;
  for (int i = 0; i <= 30; ++i) {
    const double k = i / 10.0;
    r.points.push_back({k, k < 1.5 ? 2.0 : 0.0, 10.0 + k, gba::Regime::HealthyRhythm});
  }
  const auto svg = gba::bifurcation_svg(r);
  CHECK(svg.find("threshold 1") != std::string::npos);
  CHECK(svg.find("threshold 2") != std::string::npos);
}

}  // TEST_SUITE
