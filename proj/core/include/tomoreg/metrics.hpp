#pragma once

#include "tomoreg/linear_map.hpp"
#include "tomoreg/types.hpp"

namespace tomoreg {

/// Normalized quadratic error ||C f0 - f|| / ||C f0||. The target of the
/// reconstruction is the mollified original, not the original itself.
inline double normalized_quadratic_error(const ImageGrid& f, const ImageGrid& f0,
                                         const LinearMap& c) {
  if (f.n != f0.n || c.in_dim() != f0.values.size())
    throw std::invalid_argument("normalized_quadratic_error: dimension mismatch");
  const Vec target = c.forward(f0.values);
  const double denom = target.norm();
  if (denom == 0.0)
    throw std::invalid_argument("normalized_quadratic_error: zero reference norm");
  return (target - f.values).norm() / denom;
}

}  // namespace tomoreg
