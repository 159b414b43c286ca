#include "tomoreg/fourier.hpp"

#include <numbers>

namespace tomoreg {

CMat dft_matrix(Index n) {
  CMat f(n, n);
  const double w = -2.0 * std::numbers::pi / static_cast<double>(n);
  for (Index j = 0; j < n; ++j)
    for (Index k = 0; k < n; ++k) {
      const double a = w * static_cast<double>((j * k) % n);
      f(j, k) = std::complex<double>(std::cos(a), std::sin(a));
    }
  return f;
}

Vec apply_transfer_2d(const Vec& image, const Mat& transfer, Index n) {
  if (image.size() != n * n || transfer.rows() != n || transfer.cols() != n)
    throw std::invalid_argument("apply_transfer_2d: dimension mismatch");
  const CMat f = dft_matrix(n);
  Eigen::Map<const Mat> img(image.data(), n, n);  // column-major view; the
  // transfer is radially symmetric so row/column order does not matter.
  CMat spec = f * img.cast<std::complex<double>>() * f.transpose();
  spec.array() *= transfer.cast<std::complex<double>>().array();
  const CMat fc = f.conjugate();
  CMat out = (fc * spec * fc.transpose()) / static_cast<double>(n * n);
  Mat real_out = out.real();
  return Eigen::Map<const Vec>(real_out.data(), n * n);
}

Vec apply_transfer_1d_rows(const Vec& data, const Vec& transfer, Index n_rows, Index n) {
  if (data.size() != n_rows * n || transfer.size() != n)
    throw std::invalid_argument("apply_transfer_1d_rows: dimension mismatch");
  const CMat f = dft_matrix(n);
  const CMat fc = f.conjugate();
  Vec out(data.size());
  for (Index r = 0; r < n_rows; ++r) {
    CVec spec = f * data.segment(r * n, n).cast<std::complex<double>>();
    spec.array() *= transfer.cast<std::complex<double>>().array();
    CVec filtered = (fc * spec) / static_cast<double>(n);
    out.segment(r * n, n) = filtered.real();
  }
  return out;
}

}  // namespace tomoreg
