#include "tomoreg/phantom.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace tomoreg {

void PhantomSpec::validate() const {
  if (n < 1) throw std::invalid_argument("PhantomSpec: side length must be >= 1");
  for (const auto& e : ellipses) {
    if (!(e.a > 0.0) || !(e.b > 0.0))
      throw std::invalid_argument("PhantomSpec: semi-axes must be positive");
    if (std::abs(e.x0) > 1.0 || std::abs(e.y0) > 1.0)
      throw std::invalid_argument("PhantomSpec: ellipse center outside the unit square");
  }
}

std::vector<Ellipse> shepp_logan_ellipses() {
  // High-contrast (modified) Shepp-Logan intensities.
  return {
      {0.0, 0.0, 0.69, 0.92, 0.0, 1.0},
      {0.0, -0.0184, 0.6624, 0.874, 0.0, -0.8},
      {0.22, 0.0, 0.11, 0.31, -18.0, -0.2},
      {-0.22, 0.0, 0.16, 0.41, 18.0, -0.2},
      {0.0, 0.35, 0.21, 0.25, 0.0, 0.1},
      {0.0, 0.1, 0.046, 0.046, 0.0, 0.1},
      {0.0, -0.1, 0.046, 0.046, 0.0, 0.1},
      {-0.08, -0.605, 0.046, 0.023, 0.0, 0.1},
      {0.0, -0.605, 0.023, 0.023, 0.0, 0.1},
      {0.06, -0.605, 0.023, 0.046, 0.0, 0.1},
  };
}

ImageGrid shepp_logan(const PhantomSpec& spec) {
  spec.validate();
  const Index n = spec.n;
  const auto& ellipses = spec.ellipses.empty() ? shepp_logan_ellipses() : spec.ellipses;

  Vec values = Vec::Zero(n * n);
  for (Index i = 0; i < n; ++i) {
    // Pixel centers mapped into [-1, 1]; row 0 is the top of the image.
    const double y = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    for (Index j = 0; j < n; ++j) {
      const double x = (2.0 * static_cast<double>(j) + 1.0) / static_cast<double>(n) - 1.0;
      double v = 0.0;
      for (const auto& e : ellipses) {
        const double t = e.theta_deg * std::numbers::pi / 180.0;
        const double dx = x - e.x0;
        const double dy = y - e.y0;
        const double u = dx * std::cos(t) + dy * std::sin(t);
        const double w = -dx * std::sin(t) + dy * std::cos(t);
        if ((u / e.a) * (u / e.a) + (w / e.b) * (w / e.b) <= 1.0) v += e.intensity;
      }
      values[i * n + j] = v;
    }
  }
  return ImageGrid(n, std::move(values));
}

std::vector<Ellipse> read_ellipse_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open ellipse file: " + path.string());
  std::vector<Ellipse> out;
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    Ellipse e;
    if (ls >> e.x0 >> e.y0 >> e.a >> e.b >> e.theta_deg >> e.intensity) out.push_back(e);
  }
  if (out.empty()) throw std::runtime_error("no ellipses in file: " + path.string());
  return out;
}

}  // namespace tomoreg
