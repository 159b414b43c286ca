#include "tomoreg/mollifier.hpp"

#include <numbers>

#include "tomoreg/fourier.hpp"

namespace tomoreg {

Mat hann_transfer(const MollifierSpec& spec) {
  spec.validate();
  const Index n = spec.n;
  Mat t(n, n);
  for (Index kx = 0; kx < n; ++kx) {
    const double fx = 2.0 * static_cast<double>(dft_frequency(kx, n)) / static_cast<double>(n);
    for (Index ky = 0; ky < n; ++ky) {
      const double fy = 2.0 * static_cast<double>(dft_frequency(ky, n)) / static_cast<double>(n);
      const double nu = std::hypot(fx, fy);  // radial frequency, Nyquist units
      t(kx, ky) = nu <= spec.cutoff_nyquist
                      ? 0.5 * (1.0 + std::cos(std::numbers::pi * nu / spec.cutoff_nyquist))
                      : 0.0;
    }
  }
  return t;
}

LinearMap build_mollifier(const MollifierSpec& spec) {
  auto transfer = std::make_shared<Mat>(hann_transfer(spec));
  const Index n = spec.n;
  auto apply = [transfer, n](const Vec& x) -> Vec {
    return apply_transfer_2d(x, *transfer, n);
  };
  return LinearMap(n * n, n * n, apply, apply);  // self-adjoint
}

LinearMap build_highpass(const MollifierSpec& spec) {
  auto transfer = std::make_shared<Mat>(hann_transfer(spec));
  const Index n = spec.n;
  auto apply = [transfer, n](const Vec& x) -> Vec {
    return x - apply_transfer_2d(x, *transfer, n);
  };
  return LinearMap(n * n, n * n, apply, apply);
}

}  // namespace tomoreg
