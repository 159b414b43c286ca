#pragma once

#include <Eigen/Core>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace tomoreg {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Square n-by-n scalar field, row-major storage.
struct ImageGrid {
  Index n = 0;
  Vec values;              // length n*n, row-major
  double pixel_size = 1.0;

  ImageGrid() = default;
  ImageGrid(Index side, Vec vals, double px = 1.0)
      : n(side), values(std::move(vals)), pixel_size(px) {
    validate();
  }
  static ImageGrid zero(Index side) { return ImageGrid(side, Vec::Zero(side * side)); }

  double& at(Index row, Index col) { return values[row * n + col]; }
  double at(Index row, Index col) const { return values[row * n + col]; }

  void validate() const {
    if (n <= 0) throw std::invalid_argument("ImageGrid: side length must be positive");
    if (values.size() != n * n)
      throw std::invalid_argument("ImageGrid: values must have n*n entries");
    if (!values.allFinite())
      throw std::invalid_argument("ImageGrid: values must be finite");
    if (!(pixel_size > 0.0))
      throw std::invalid_argument("ImageGrid: pixel_size must be positive");
  }
};

/// Projection data, angle-major storage: bin b of angle a at index a*n_bins + b.
struct Sinogram {
  Index n_angles = 0;
  Index n_bins = 0;
  Vec values;                    // length n_angles*n_bins
  std::vector<double> angles_deg;

  Sinogram() = default;
  Sinogram(Index na, Index nb, Vec vals, std::vector<double> angles)
      : n_angles(na), n_bins(nb), values(std::move(vals)), angles_deg(std::move(angles)) {
    validate();
  }

  double& at(Index angle, Index bin) { return values[angle * n_bins + bin]; }
  double at(Index angle, Index bin) const { return values[angle * n_bins + bin]; }

  void validate() const {
    if (n_angles <= 0 || n_bins <= 0)
      throw std::invalid_argument("Sinogram: dimensions must be positive");
    if (values.size() != n_angles * n_bins)
      throw std::invalid_argument("Sinogram: values must have n_angles*n_bins entries");
    if (!values.allFinite())
      throw std::invalid_argument("Sinogram: values must be finite");
    if (static_cast<Index>(angles_deg.size()) != n_angles)
      throw std::invalid_argument("Sinogram: angles_deg size mismatch");
    for (size_t i = 1; i < angles_deg.size(); ++i)
      if (!(angles_deg[i] > angles_deg[i - 1]))
        throw std::invalid_argument("Sinogram: angles_deg must be strictly increasing");
    if (!angles_deg.empty() && angles_deg.back() - angles_deg.front() > 360.0)
      throw std::invalid_argument("Sinogram: angular span exceeds 360 degrees");
  }
};

/// Acquisition geometry. Zero response parameters select the ideal Radon mode.
struct GeometryConfig {
  Index n = 0;
  Index n_angles = 0;
  Index n_bins = 0;
  double span_deg = 360.0;
  double response_sigma0 = 0.0;      // blur std-dev at the detector, in bins
  double response_sigma_slope = 0.0; // std-dev growth per pixel of depth

  bool ideal() const { return response_sigma0 == 0.0 && response_sigma_slope == 0.0; }

  void validate() const {
    if (n < 1 || n_angles < 1 || n_bins < 1)
      throw std::invalid_argument("GeometryConfig: dimensions must be >= 1");
    if (!(span_deg > 0.0) || span_deg > 360.0)
      throw std::invalid_argument("GeometryConfig: span_deg must be in (0, 360]");
    if (!std::isfinite(response_sigma0) || !std::isfinite(response_sigma_slope) ||
        !std::isfinite(span_deg))
      throw std::invalid_argument("GeometryConfig: nonfinite parameter");
    if (response_sigma0 < 0.0 || response_sigma_slope < 0.0)
      throw std::invalid_argument("GeometryConfig: response parameters must be nonnegative");
  }

  /// Evenly spaced angles over [0, span_deg), in degrees.
  std::vector<double> angles() const {
    std::vector<double> a(static_cast<size_t>(n_angles));
    for (Index k = 0; k < n_angles; ++k)
      a[static_cast<size_t>(k)] = span_deg * static_cast<double>(k) / static_cast<double>(n_angles);
    return a;
  }
};

}  // namespace tomoreg
