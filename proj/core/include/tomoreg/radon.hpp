#pragma once

#include "tomoreg/linear_map.hpp"
#include "tomoreg/types.hpp"

namespace tomoreg {

/// Discrete Radon projector, pixel-driven with an exact strip-integral
/// footprint: each pixel's unit square is projected onto the detector axis and
/// integrated over every bin it overlaps (discretization stays below 2% on
/// smooth images at any angle). In response mode each footprint is additionally blurred
/// along the bin axis by a Gaussian whose std-dev grows with the distance from
/// the pixel to the detector: sigma(d) = response_sigma0 + response_sigma_slope * d.
LinearMap build_radon_projector(const GeometryConfig& geom);

Sinogram forward_project(const LinearMap& radon, const ImageGrid& f,
                         const GeometryConfig& geom);
ImageGrid back_project(const LinearMap& radon, const Sinogram& g,
                       const GeometryConfig& geom);

}  // namespace tomoreg
