#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "pdmdirac/profiles.hpp"

namespace pdm {

/// A residual field together with the per-node scale it should be judged
/// against. An empty scale means the residual is absolute.
template <typename T>
struct Residual {
  SampledField<T> field;
  std::vector<double> scale;

  double sup() const { return sup_norm(field); }

  /// max_i |r_i| / scale_i, or sup() when no scale is attached.
  double relative() const {
    if (scale.empty()) return sup();
    double worst = 0.0;
    for (std::size_t i = 0; i < field.size(); ++i)
      worst = std::max(worst, std::abs(field.value(i)) / scale[i]);
    return worst;
  }
};

/// Uniform scale vector of length n.
inline std::vector<double> uniform_scale(std::size_t n, double s) { return std::vector<double>(n, s); }

/// Per-node term magnitudes floored at floor_ratio times their maximum, so
/// nodes where every term vanishes do not divide by zero.
inline std::vector<double> floored_scale(std::vector<double> local, double floor_ratio = 1e-12) {
  double top = 0.0;
  for (double v : local) top = std::max(top, v);
  const double floor = std::max(top * floor_ratio, 1e-300);
  for (double& v : local) v = std::max(v, floor);
  return local;
}

}  // namespace pdm
