#include "tomoreg/radon.hpp"

#include <Eigen/SparseCore>
#include <cmath>
#include <numbers>
#include <vector>

namespace tomoreg {

namespace {

using SparseMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Gaussian kernel of std-dev sigma on the integer lattice, truncated at
// 4*sigma and renormalized to unit sum. Returns {offset -halfwidth..+halfwidth}.
std::vector<double> gaussian_kernel(double sigma, int& halfwidth) {
  if (sigma <= 0.0) {
    halfwidth = 0;
    return {1.0};
  }
  halfwidth = static_cast<int>(std::ceil(4.0 * sigma));
  std::vector<double> k(static_cast<size_t>(2 * halfwidth + 1));
  double sum = 0.0;
  for (int m = -halfwidth; m <= halfwidth; ++m) {
    double v = std::exp(-0.5 * (m / sigma) * (m / sigma));
    k[static_cast<size_t>(m + halfwidth)] = v;
    sum += v;
  }
  for (double& v : k) v /= sum;
  return k;
}

// CDF of the projection of a unit-mass unit square onto the detector axis:
// the convolution of boxes of widths |cos| and |sin|, a trapezoid supported
// on [-(w1+w2)/2, (w1+w2)/2] with flat top of halfwidth (w1-w2)/2.
double footprint_cdf(double u, double w1, double w2) {
  const double a = 0.5 * (w1 + w2);
  const double b = 0.5 * (w1 - w2);
  if (u <= -a) return 0.0;
  if (u >= a) return 1.0;
  const double h = 1.0 / w1;  // flat-top density
  if (w2 <= 1e-12) return std::min(1.0, (u + a) * h);
  if (u <= -b) return h * (u + a) * (u + a) / (2.0 * w2);
  if (u >= b) return 1.0 - h * (a - u) * (a - u) / (2.0 * w2);
  return 0.5 * h * w2 + h * (u + b);
}

}  // namespace

LinearMap build_radon_projector(const GeometryConfig& geom) {
  geom.validate();
  if (geom.n_bins < geom.n)
    throw std::invalid_argument(
        "build_radon_projector: n_bins < n, detector would truncate the image support");

  const Index n = geom.n;
  const Index n_bins = geom.n_bins;
  const Index n_angles = geom.n_angles;
  const auto angles = geom.angles();

  // Image pixel centers on a grid centered at the origin, unit pixel pitch.
  // Detector bins share the pitch and are centered on the image.
  const double half = (static_cast<double>(n) - 1.0) / 2.0;
  const double bin_center = (static_cast<double>(n_bins) - 1.0) / 2.0;
  const double detector_s = static_cast<double>(n) / 2.0;

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<size_t>(n * n * n_angles * 2));

  for (Index a = 0; a < n_angles; ++a) {
    const double phi = angles[static_cast<size_t>(a)] * std::numbers::pi / 180.0;
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const Index row0 = a * n_bins;
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        const double x = static_cast<double>(j) - half;
        const double y = half - static_cast<double>(i);
        const double t = x * c + y * s + bin_center;
        // Depth along the ray direction (-sin, cos) from pixel to detector.
        const double d = detector_s - (-x * s + y * c);
        const double sigma = geom.response_sigma0 + geom.response_sigma_slope * d;

        const Index col = i * n + j;

        // Strip-integral footprint: weight of bin b is the mass of the
        // projected pixel footprint falling into [b - 1/2, b + 1/2].
        const double w1 = std::max(std::abs(c), std::abs(s));
        const double w2 = std::min(std::abs(c), std::abs(s));
        const double support = 0.5 * (w1 + w2) + 0.5;
        const Index lo = static_cast<Index>(std::floor(t - support)) + 1;
        const Index hi = static_cast<Index>(std::ceil(t + support)) - 1;

        int hw = 0;
        const auto kern = gaussian_kernel(sigma, hw);
        for (Index b = lo; b <= hi; ++b) {
          const double w = footprint_cdf(b + 0.5 - t, w1, w2) -
                           footprint_cdf(b - 0.5 - t, w1, w2);
          if (w <= 0.0) continue;
          for (int m = -hw; m <= hw; ++m) {
            const Index bb = b + m;
            if (bb < 0 || bb >= n_bins) continue;
            triplets.emplace_back(static_cast<int>(row0 + bb), static_cast<int>(col),
                                  w * kern[static_cast<size_t>(m + hw)]);
          }
        }
      }
    }
  }

  auto mat = std::make_shared<SparseMat>(n_angles * n_bins, n * n);
  mat->setFromTriplets(triplets.begin(), triplets.end());
  mat->makeCompressed();

  return LinearMap(
      n * n, n_angles * n_bins,
      [mat](const Vec& x) -> Vec { return (*mat) * x; },
      [mat](const Vec& y) -> Vec { return mat->transpose() * y; });
}

Sinogram forward_project(const LinearMap& radon, const ImageGrid& f,
                         const GeometryConfig& geom) {
  f.validate();
  return Sinogram(geom.n_angles, geom.n_bins, radon.forward(f.values), geom.angles());
}

ImageGrid back_project(const LinearMap& radon, const Sinogram& g,
                       const GeometryConfig& geom) {
  g.validate();
  return ImageGrid(geom.n, radon.adjoint(g.values));
}

}  // namespace tomoreg
