#pragma once

#include <cstdint>

#include "tomoreg/types.hpp"

namespace tomoreg {

struct NoiseSpec {
  double target_total_counts = 50065.0;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(target_total_counts > 0.0))
      throw std::invalid_argument("NoiseSpec: target_total_counts must be positive");
  }
};

/// Poisson sample with the given mean from a per-bin deterministic stream.
/// Inversion by sequential search below mean 30, transformed rejection above.
std::uint64_t poisson_sample(double mean, std::uint64_t seed, std::uint64_t counter);

/// Scales g so its total equals target_total_counts, then replaces every bin
/// by an independent Poisson sample with mean equal to the scaled bin value.
/// Bitwise-reproducible for a fixed seed; bins are sampled on independent
/// counter-mode streams.
Sinogram poisson_corrupt(const Sinogram& g, const NoiseSpec& noise);

}  // namespace tomoreg
