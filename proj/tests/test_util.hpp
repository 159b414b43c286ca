#pragma once

#include <Eigen/QR>

#include <random>

#include "tomoreg/types.hpp"

namespace tomoreg::test {

inline Vec rand_vec(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> dist;
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

inline Mat rand_mat(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> dist;
  Mat m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

inline Mat rand_orthogonal(std::mt19937_64& rng, Index n) {
  const Mat g = rand_mat(rng, n, n);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  return q;
}

/// Random matrix with a prescribed rank and singular values in [s_lo, s_hi].
inline Mat rand_rank_deficient(std::mt19937_64& rng, Index rows, Index cols, Index rank,
                               double s_lo = 0.5, double s_hi = 2.0) {
  const Mat u = rand_orthogonal(rng, rows).leftCols(rank);
  const Mat v = rand_orthogonal(rng, cols).leftCols(rank);
  std::uniform_real_distribution<double> dist(s_lo, s_hi);
  Vec s(rank);
  for (Index i = 0; i < rank; ++i) s[i] = dist(rng);
  return u * s.asDiagonal() * v.transpose();
}

}  // namespace tomoreg::test
