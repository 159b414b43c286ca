#pragma once

#include "tomoreg/linear_map.hpp"
#include "tomoreg/types.hpp"

namespace tomoreg {

/// Smoothing kernel selection. The transfer function is a radial Hann window
/// with the given cutoff, expressed in Nyquist units.
struct MollifierSpec {
  enum class Kind { Hann };
  Kind kind = Kind::Hann;
  double cutoff_nyquist = 0.5;
  Index n = 0;

  void validate() const {
    if (!(cutoff_nyquist > 0.0) || cutoff_nyquist > 1.0)
      throw std::invalid_argument("MollifierSpec: cutoff must be in (0, 1]");
    if (n < 1) throw std::invalid_argument("MollifierSpec: image side must be >= 1");
  }
};

/// Radial Hann transfer values on the n-by-n DFT grid (DFT index order).
Mat hann_transfer(const MollifierSpec& spec);

/// Circular-convolution smoothing operator C. Self-adjoint; its spectrum is
/// the transfer function, contained in [0, 1].
LinearMap build_mollifier(const MollifierSpec& spec);

/// High-pass complement H = I - C. H + C = I exactly.
LinearMap build_highpass(const MollifierSpec& spec);

}  // namespace tomoreg
