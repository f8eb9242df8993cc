#include "gba/time_series.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "gba/error.hpp"

namespace gba {

std::vector<double> TimeSeries::channel(Species s) const {
  std::vector<double> out;
  out.reserve(x.size());
  for (const auto& v : x) out.push_back(v[s]);
  return out;
}

std::size_t TimeSeries::lower_index(double t_query) const {
  return static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), t_query) - t.begin());
}

void TimeSeries::validate() const {
  if (x.size() != t.size() || u.size() != t.size() || E.size() != t.size()) {
    throw Error("time series columns have inconsistent lengths");
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    bool ok = std::isfinite(t[i]) && std::isfinite(u[i]) && std::isfinite(E[i]);
    for (std::size_t k = 0; k < kStateDim; ++k) ok = ok && std::isfinite(x[i][k]);
    if (!ok) throw Error(fmt::format("time series sample {} is not finite", i));
  }
  if (t.size() > 2) {
    const double h = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (std::abs((t[i] - t[i - 1]) - h) > 1e-9 * h) {
        throw Error(fmt::format("time series spacing not uniform at sample {}", i));
      }
    }
  }
}

void write_csv(std::ostream& os, const TimeSeries& ts) {
  os << "t,P,T,S,A,C,L,u,E\n";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& v = ts.x[i];
    fmt::print(os, "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
               ts.t[i], v.P, v.T, v.S, v.A, v.C, v.L, ts.u[i], ts.E[i]);
  }
}

}  // namespace gba
