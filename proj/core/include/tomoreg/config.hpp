#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tomoreg/noise.hpp"
#include "tomoreg/types.hpp"

namespace tomoreg {

/// Full pipeline configuration. Serializes to flat key=value text with dotted
/// section prefixes; all randomness derives from the single seed.
struct RunConfig {
  GeometryConfig geometry{64, 64, 64, 360.0, 0.5, 0.02};

  std::string phantom_file;  // empty selects the built-in Shepp-Logan set

  double noise_total_counts = 50065.0;
  std::uint64_t seed = 20100510;

  std::vector<double> cutoffs = {0.5, 0.6, 0.7, 0.8};

  std::string preprocess_method = "tikhonov_ppa";  // ppa | tikhonov_ppa | truncated_svd
  double preprocess_epsilon_rel = 1e-6;  // epsilon = rel * ||R||^2-estimate
  double preprocess_outer_tol = 1e-7;
  int preprocess_max_outer = 200;
  double preprocess_inner_tol = 1e-10;
  int preprocess_max_inner = 5000;

  double recon_alpha = 0.1;  // applied after operator-norm normalization
  double recon_tol = 1e-7;
  int recon_max_iters = 2000;
  bool recon_positivity = false;
  double fbp_cutoff = 0.0;   // 0 means: use each sweep cutoff

  std::string out_dir = "out";

  void validate() const;

  /// Canonical key=value serialization (sorted keys).
  std::string serialize() const;

  /// FNV-1a hash of the canonical serialization, hex-encoded.
  std::string hash() const;

  NoiseSpec noise_spec() const { return {noise_total_counts, seed}; }
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace tomoreg
