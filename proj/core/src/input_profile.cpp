#include "gba/input_profile.hpp"

#include <cmath>

#include <fmt/format.h>

#include "gba/error.hpp"

namespace gba {

namespace {

void require_rate(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) {
    throw InvalidArgument(fmt::format("input {} must be finite and >= 0 (got {})", name, v));
  }
}

}  // namespace

InputProfile InputProfile::constant(double value) {
  InputProfile p;
  p.kind = Kind::Constant;
  p.baseline = value;
  p.validate();
  return p;
}

InputProfile InputProfile::pulse(double baseline, double elevated, double t_on, double t_off) {
  InputProfile p;
  p.kind = Kind::Pulse;
  p.baseline = baseline;
  p.elevated = elevated;
  p.t_on = t_on;
  p.t_off = t_off;
  p.validate();
  return p;
}

InputProfile InputProfile::step(double baseline, double elevated, double t_on) {
  InputProfile p;
  p.kind = Kind::Step;
  p.baseline = baseline;
  p.elevated = elevated;
  p.t_on = t_on;
  p.validate();
  return p;
}

InputProfile InputProfile::piecewise(std::vector<std::pair<double, double>> segments) {
  InputProfile p;
  p.kind = Kind::Piecewise;
  p.segments = std::move(segments);
  p.validate();
  return p;
}

void InputProfile::validate() const {
  switch (kind) {
    case Kind::Constant:
      require_rate(baseline, "baseline");
      break;
    case Kind::Pulse:
      require_rate(baseline, "baseline");
      require_rate(elevated, "elevated");
      if (!std::isfinite(t_on) || !std::isfinite(t_off) || !(t_off > t_on)) {
        throw InvalidArgument(fmt::format(
            "pulse needs finite t_on < t_off (got {}, {})", t_on, t_off));
      }
      break;
    case Kind::Step:
      require_rate(baseline, "baseline");
      require_rate(elevated, "elevated");
      if (!std::isfinite(t_on)) throw InvalidArgument("step t_on must be finite");
      break;
    case Kind::Piecewise:
      if (segments.empty()) throw InvalidArgument("piecewise input needs at least one segment");
      for (std::size_t i = 0; i < segments.size(); ++i) {
        if (!std::isfinite(segments[i].first)) {
          throw InvalidArgument("piecewise breakpoints must be finite");
        }
        require_rate(segments[i].second, "segment value");
        if (i > 0 && !(segments[i].first > segments[i - 1].first)) {
          throw InvalidArgument("piecewise breakpoints must increase strictly");
        }
      }
      break;
  }
}

double InputProfile::value(double t) const {
  switch (kind) {
    case Kind::Constant:
      return baseline;
    case Kind::Pulse:
      return (t >= t_on && t < t_off) ? elevated : baseline;
    case Kind::Step:
      return t >= t_on ? elevated : baseline;
    case Kind::Piecewise: {
      double v = segments.front().second;
      for (const auto& [start, val] : segments) {
        if (t >= start) v = val;
        else break;
      }
      return v;
    }
  }
  return baseline;
}

double InputProfile::left_limit(double t) const {
  switch (kind) {
    case Kind::Constant:
      return baseline;
    case Kind::Pulse:
      return (t > t_on && t <= t_off) ? elevated : baseline;
    case Kind::Step:
      return t > t_on ? elevated : baseline;
    case Kind::Piecewise: {
      double v = segments.front().second;
      for (const auto& [start, val] : segments) {
        if (t > start) v = val;
        else break;
      }
      return v;
    }
  }
  return baseline;
}

std::vector<double> InputProfile::breakpoints() const {
  switch (kind) {
    case Kind::Constant:
      return {};
    case Kind::Pulse:
      return {t_on, t_off};
    case Kind::Step:
      return {t_on};
    case Kind::Piecewise: {
      std::vector<double> b;
      for (const auto& s : segments) b.push_back(s.first);
      return b;
    }
  }
  return {};
}

std::string to_string(InputProfile::Kind kind) {
  switch (kind) {
    case InputProfile::Kind::Constant: return "constant";
    case InputProfile::Kind::Pulse: return "pulse";
    case InputProfile::Kind::Step: return "step";
    case InputProfile::Kind::Piecewise: return "custom-piecewise";
  }
  return "constant";
}

InputProfile::Kind input_kind_from_string(const std::string& name) {
  if (name == "constant") return InputProfile::Kind::Constant;
  if (name == "pulse") return InputProfile::Kind::Pulse;
  if (name == "step") return InputProfile::Kind::Step;
  if (name == "custom-piecewise" || name == "piecewise") return InputProfile::Kind::Piecewise;
  throw InvalidArgument(fmt::format("unknown input profile kind '{}'", name));
}

}  // namespace gba
