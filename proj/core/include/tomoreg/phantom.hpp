#pragma once

#include <filesystem>
#include <vector>

#include "tomoreg/types.hpp"

namespace tomoreg {

/// One ellipse of a phantom; coordinates live in the unit square [-1, 1]^2.
struct Ellipse {
  double x0 = 0.0;
  double y0 = 0.0;
  double a = 0.0;          // semi-axis along the rotated x direction
  double b = 0.0;
  double theta_deg = 0.0;  // rotation, degrees counterclockwise
  double intensity = 0.0;  // additive
};

struct PhantomSpec {
  Index n = 64;
  std::vector<Ellipse> ellipses;

  void validate() const;
};

/// The standard 10-ellipse Shepp-Logan parameter set (high-contrast variant).
std::vector<Ellipse> shepp_logan_ellipses();

/// Rasterizes the ellipse sum on the n-by-n pixel-center grid.
ImageGrid shepp_logan(const PhantomSpec& spec);

/// Ellipse list from a text file: one ellipse per line, six numbers
/// (x0 y0 a b theta_deg intensity), '#' comments allowed.
std::vector<Ellipse> read_ellipse_file(const std::filesystem::path& path);

}  // namespace tomoreg
