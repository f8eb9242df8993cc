#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <vector>

#include "gba/model.hpp"

namespace gba {

/// Uniformly sampled trajectory with the input and circadian value at each
/// sample. `params` is the parameter set the trajectory was produced with.
struct TimeSeries {
  std::vector<double> t;
  std::vector<StateVector> x;
  std::vector<double> u;
  std::vector<double> E;
  std::shared_ptr<const ModelParameters> params;

  std::size_t size() const noexcept { return t.size(); }
  bool empty() const noexcept { return t.empty(); }
  double spacing() const noexcept { return t.size() > 1 ? t[1] - t[0] : 0.0; }

  std::vector<double> channel(Species s) const;

  /// Index of the first sample with time >= t_query (size() if none).
  std::size_t lower_index(double t_query) const;

  /// Sample finiteness and uniform spacing (1e-9 relative). Throws Error.
  void validate() const;
};

/// Header `t,P,T,S,A,C,L,u,E`; 17 significant digits.
void write_csv(std::ostream& os, const TimeSeries& ts);

}  // namespace gba
