#pragma once

#include <functional>
#include <memory>

#include "tomoreg/types.hpp"

namespace tomoreg {

/// Matrix-free linear operator with forward and adjoint actions.
///
/// The adjoint must be the true transpose of the forward action; every map
/// shipped by this library satisfies the dot-product test
/// <Mx, y> == <x, M^T y> to 1e-10 relative.
class LinearMap {
 public:
  using Apply = std::function<Vec(const Vec&)>;

  LinearMap() = default;
  LinearMap(Index in_dim, Index out_dim, Apply forward, Apply adjoint)
      : in_dim_(in_dim), out_dim_(out_dim),
        forward_(std::move(forward)), adjoint_(std::move(adjoint)) {
    if (in_dim_ <= 0 || out_dim_ <= 0)
      throw std::invalid_argument("LinearMap: dimensions must be positive");
  }

  Index in_dim() const { return in_dim_; }
  Index out_dim() const { return out_dim_; }

  Vec forward(const Vec& x) const {
    if (x.size() != in_dim_)
      throw std::invalid_argument("LinearMap::forward: dimension mismatch");
    return forward_(x);
  }

  Vec adjoint(const Vec& y) const {
    if (y.size() != out_dim_)
      throw std::invalid_argument("LinearMap::adjoint: dimension mismatch");
    return adjoint_(y);
  }

  /// Normal-equations action M^T(Mx), used by the iterative solvers.
  Vec normal(const Vec& x) const { return adjoint_(forward_(x)); }

 private:
  Index in_dim_ = 0;
  Index out_dim_ = 0;
  Apply forward_;
  Apply adjoint_;
};

LinearMap identity_map(Index n);
LinearMap map_from_dense(const Mat& m);

/// Columns are forward(e_j). Throws when in_dim*out_dim exceeds the cap.
Mat materialize_dense(const LinearMap& m, Index entry_cap = 16'000'000);

/// Largest-singular-value estimate by power iteration on M^T M,
/// deterministic for a fixed seed.
double operator_norm_estimate(const LinearMap& m, int iterations = 30,
                              std::uint64_t seed = 0x746f6d6f72656701ull);

}  // namespace tomoreg
