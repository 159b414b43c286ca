#pragma once

#include <Eigen/Core>
#include <complex>

#include "tomoreg/types.hpp"

namespace tomoreg {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

/// Unnormalized forward DFT matrix of size n (F(j,k) = exp(-2*pi*i*j*k/n)).
CMat dft_matrix(Index n);

/// Signed DFT frequency index: k for k <= n/2, k - n otherwise.
inline Index dft_frequency(Index k, Index n) { return k <= n / 2 ? k : k - n; }

/// Circularly convolves an n-by-n image (given as a row-major vector) with the
/// operator whose 2D DFT transfer function is the real array `transfer`
/// (also n-by-n, DFT index order). Output is real-valued.
Vec apply_transfer_2d(const Vec& image, const Mat& transfer, Index n);

/// Filters each row of `rows` (length n each) by a real transfer function
/// given in DFT index order. Used by the FBP ramp filter.
Vec apply_transfer_1d_rows(const Vec& data, const Vec& transfer, Index n_rows, Index n);

}  // namespace tomoreg
