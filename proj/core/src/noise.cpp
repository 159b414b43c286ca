#include "tomoreg/noise.hpp"

#include <cmath>

#include "tomoreg/rng.hpp"

namespace tomoreg {

namespace {

std::uint64_t poisson_inversion(double mean, CounterRng::Stream& rng) {
  const double u = rng.next_double();
  double p = std::exp(-mean);
  double cum = p;
  std::uint64_t k = 0;
  while (u > cum && k < 10000) {
    ++k;
    p *= mean / static_cast<double>(k);
    cum += p;
  }
  return k;
}

// Hormann's PTRS transformed rejection, valid for mean >= 10.
std::uint64_t poisson_ptrs(double mean, CounterRng::Stream& rng) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);

  for (;;) {
    const double u = rng.next_double() - 0.5;
    const double v = rng.next_double();
    const double us = 0.5 - std::abs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (kf < 0.0) continue;
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(kf);
    if (us < 0.013 && v > us) continue;
    const double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
    const double rhs = -mean + kf * loglam - std::lgamma(kf + 1.0);
    if (lhs <= rhs) return static_cast<std::uint64_t>(kf);
  }
}

}  // namespace

std::uint64_t poisson_sample(double mean, std::uint64_t seed, std::uint64_t counter) {
  if (mean < 0.0 || !std::isfinite(mean))
    throw std::invalid_argument("poisson_sample: invalid mean");
  if (mean == 0.0) return 0;
  auto stream = CounterRng(seed).stream(counter);
  return mean < 30.0 ? poisson_inversion(mean, stream) : poisson_ptrs(mean, stream);
}

Sinogram poisson_corrupt(const Sinogram& g, const NoiseSpec& noise) {
  noise.validate();
  g.validate();

  Vec clean = g.values;
  const double clamp_tol = -1e-9 * std::max(clean.maxCoeff(), 0.0);
  for (Index i = 0; i < clean.size(); ++i) {
    if (clean[i] < 0.0) {
      if (clean[i] < clamp_tol)
        throw std::invalid_argument("poisson_corrupt: negative bins beyond clamp tolerance");
      clean[i] = 0.0;  // tiny numeric negatives clamped
    }
  }

  const double total = clean.sum();
  if (total <= 0.0)
    return Sinogram(g.n_angles, g.n_bins, Vec::Zero(clean.size()), g.angles_deg);
  clean *= noise.target_total_counts / total;

  Vec noisy(clean.size());
  for (Index i = 0; i < clean.size(); ++i)
    noisy[i] = static_cast<double>(
        poisson_sample(clean[i], noise.seed, static_cast<std::uint64_t>(i)));
  return Sinogram(g.n_angles, g.n_bins, std::move(noisy), g.angles_deg);
}

}  // namespace tomoreg
