#include "gba/plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "gba/error.hpp"

namespace gba {

namespace {

constexpr double kWidth = 720.0;
constexpr double kPanelHeight = 300.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 34.0;
constexpr double kBottom = 46.0;

constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                   "#8c564b"};

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::vector<double> linear_ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double f : {1.0, 2.0, 5.0, 10.0}) {
    step = f * mag;
    if (span / step <= 6.0) break;
  }
  std::vector<double> t;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step) {
    t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  }
  return t;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(hi > lo)) {
      const double d = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
      lo -= d;
      hi += d;
    }
  }
};

std::string render_panel(const Panel& p, double y0) {
  Range xr, yr;
  for (const auto& s : p.series) {
    if (s.x.size() != s.y.size()) throw InvalidArgument("series x and y lengths differ");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (p.log_x && !(s.x[i] > 0.0)) continue;
      xr.add(p.log_x ? std::log10(s.x[i]) : s.x[i]);
      yr.add(s.y[i]);
    }
  }
  if (!std::isfinite(xr.lo)) throw InvalidArgument(fmt::format("panel '{}' has no data", p.title));
  xr.pad();
  yr.pad();

  const double w = kWidth - kLeft - kRight;
  const double h = kPanelHeight - kTop - kBottom;
  const double top = y0 + kTop;
  auto X = [&](double v) {
    const double u = p.log_x ? std::log10(v) : v;
    return kLeft + (u - xr.lo) / (xr.hi - xr.lo) * w;
  };
  auto Y = [&](double v) { return top + h - (v - yr.lo) / (yr.hi - yr.lo) * h; };

  std::string out;
  out += fmt::format(
      "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" "
      "stroke=\"#000\"/>\n",
      kLeft, top, w, h);
  out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" "
                     "font-size=\"14\">{}</text>\n",
                     kLeft + w / 2, y0 + 20.0, escape(p.title));
  out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" "
                     "font-size=\"12\">{}</text>\n",
                     kLeft + w / 2, top + h + 36.0, escape(p.x_label));
  out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-size=\"12\" "
                     "transform=\"rotate(-90 {:.2f} {:.2f})\">{}</text>\n",
                     18.0, top + h / 2, 18.0, top + h / 2, escape(p.y_label));

  // x ticks
  if (p.log_x) {
    for (double e = std::ceil(xr.lo - 1e-9); e <= xr.hi + 1e-9; e += 1.0) {
      const double px = kLeft + (e - xr.lo) / (xr.hi - xr.lo) * w;
      out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" "
                         "stroke=\"#ccc\"/>\n",
                         px, top, top + h);
      out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" "
                         "font-size=\"11\">1e{}</text>\n",
                         px, top + h + 16.0, static_cast<int>(e));
    }
  } else {
    for (double v : linear_ticks(xr.lo, xr.hi)) {
      const double px = X(v);
      out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" "
                         "stroke=\"#ccc\"/>\n",
                         px, top, top + h);
      out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" "
                         "font-size=\"11\">{:.6g}</text>\n",
                         px, top + h + 16.0, v);
    }
  }
  for (double v : linear_ticks(yr.lo, yr.hi)) {
    const double py = Y(v);
    out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" "
                       "stroke=\"#ccc\"/>\n",
                       kLeft, py, kLeft + w);
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\" "
                       "font-size=\"11\">{:.6g}</text>\n",
                       kLeft - 6.0, py + 4.0, v);
  }

  for (std::size_t r = 0; r < p.vertical_rules.size(); ++r) {
    const double v = p.vertical_rules[r];
    if (p.log_x && !(v > 0.0)) continue;
    const double px = X(v);
    out += fmt::format("<line class=\"rule\" x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" "
                       "y2=\"{2:.2f}\" stroke=\"#555\" stroke-dasharray=\"6,4\"/>\n",
                       px, top, top + h);
    if (r < p.rule_labels.size()) {
      out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"11\">{}</text>\n",
                         px + 4.0, top + 14.0 + 14.0 * static_cast<double>(r),
                         escape(p.rule_labels[r]));
    }
  }

  for (std::size_t k = 0; k < p.series.size(); ++k) {
    const auto& s = p.series[k];
    const char* color = kColors[k % std::size(kColors)];
    std::string pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (p.log_x && !(s.x[i] > 0.0)) continue;
      pts += fmt::format("{:.2f},{:.2f} ", X(s.x[i]), Y(s.y[i]));
    }
    if (!pts.empty()) pts.pop_back();
    out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" "
                       "points=\"{}\"/>\n",
                       color, pts);
    if (!s.label.empty()) {
      const double ly = top + 14.0 + 14.0 * static_cast<double>(k);
      out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\" font-size=\"11\" "
                         "fill=\"{}\">{}</text>\n",
                         kLeft + w - 6.0, ly, color, escape(s.label));
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const std::vector<Panel>& panels) {
  if (panels.empty()) throw InvalidArgument("nothing to plot");
  const double height = kPanelHeight * static_cast<double>(panels.size());
  std::string out = fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "viewBox=\"0 0 {:.0f} {:.0f}\" font-family=\"sans-serif\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n",
      kWidth, height, kWidth, height);
  for (std::size_t i = 0; i < panels.size(); ++i) {
    out += render_panel(panels[i], kPanelHeight * static_cast<double>(i));
  }
  out += "</svg>\n";
  return out;
}

std::string timeseries_svg(const TimeSeries& ts) {
  if (ts.empty()) throw InvalidArgument("empty trajectory");
  std::vector<double> hours(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) hours[i] = ts.t[i] / 60.0;
  Panel c{"Cortisol", "time (h)", "C", false, {{"C", hours, ts.channel(Species::C)}}, {}, {}};
  Panel a{"ACTH", "time (h)", "A", false, {{"A", hours, ts.channel(Species::A)}}, {}, {}};
  return render_svg({c, a});
}

std::string bode_svg(const FrequencyResponse& fr) {
  if (fr.grid.empty()) throw InvalidArgument("empty frequency response");
  Panel mag{"Magnitude", "omega (rad/min)", "|H| (dB)", true,
            {{"", fr.grid, fr.magnitude_db}}, {}, {}};
  if (fr.omega_3db) {
    mag.vertical_rules.push_back(*fr.omega_3db);
    mag.rule_labels.push_back("omega_3dB");
  }
  Panel ph{"Phase", "omega (rad/min)", "phase (deg)", true, {{"", fr.grid, fr.phase_deg}}, {}, {}};
  return render_svg({mag, ph});
}

std::string capacity_svg(const CapacityResult& c, double time_scale) {
  if (c.grid.empty()) throw InvalidArgument("empty capacity result");
  auto cum = c.cumulative();
  for (double& v : cum) v *= time_scale;
  Panel eta{"Spectral efficiency", "omega (rad/min)", "eta (bits)", true,
            {{"", c.grid, c.eta}}, {}, {}};
  Panel cu{"Cumulative capacity", "omega (rad/min)",
           time_scale == 1.0 ? "bits/min" : "bits/s", true, {{"", c.grid, cum}}, {}, {}};
  return render_svg({eta, cu});
}

std::string capacity_curve_svg(const std::vector<CapacityPoint>& curve, double time_scale) {
  Series s;
  for (const auto& p : curve) {
    if (!p.capacity) continue;
    s.x.push_back(p.k_leak);
    s.y.push_back(*p.capacity * time_scale);
  }
  if (s.x.empty()) throw InvalidArgument("capacity curve has no successful points");
  return render_svg({Panel{"Capacity vs stress", "k_leak",
                           time_scale == 1.0 ? "bits/min" : "bits/s", false, {s}, {}, {}}});
}

std::string bifurcation_svg(const SweepResult& r) {
  if (r.points.empty()) throw InvalidArgument("empty sweep");
  Series amp{"amplitude", {}, {}};
  Series mean{"mean cortisol", {}, {}};
  for (const auto& p : r.points) {
    amp.x.push_back(p.k_leak);
    amp.y.push_back(p.amplitude);
    mean.x.push_back(p.k_leak);
    mean.y.push_back(p.mean_cortisol);
  }
  Panel a{"Cortisol oscillation amplitude", "k_leak", "peak-to-trough", false, {amp}, {}, {}};
  Panel m{"Mean cortisol", "k_leak", "C", false, {mean}, {}, {}};
  for (Panel* p : {&a, &m}) {
    if (r.threshold_1) {
      p->vertical_rules.push_back(*r.threshold_1);
      p->rule_labels.push_back(fmt::format("threshold 1 = {:.3g}", *r.threshold_1));
    }
    if (r.threshold_2) {
      p->vertical_rules.push_back(*r.threshold_2);
      p->rule_labels.push_back(fmt::format("threshold 2 = {:.3g}", *r.threshold_2));
    }
  }
  return render_svg({a, m});
}

}  // namespace gba
