#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "tomoreg/linear_map.hpp"
#include "tomoreg/proximal.hpp"
#include "tomoreg/svd.hpp"
#include "tomoreg/types.hpp"

namespace tomoreg {

/// How the pseudo-inverse solve inside the preprocessing is carried out.
struct PreprocessMethod {
  enum class Kind { Ppa, TikhonovPpa, TruncatedSvd };
  Kind kind = Kind::TikhonovPpa;
  double epsilon = 1e-6;            // TikhonovPpa only
  LambdaSchedule schedule;          // Ppa / TikhonovPpa
  ProxConfig config;                // Ppa / TikhonovPpa
  TruncationPolicy policy;          // TruncatedSvd only
  bool schedule_from_operator = true;  // derive the default schedule from ||R||

  static PreprocessMethod ppa();
  static PreprocessMethod tikhonov_ppa(double epsilon);
  static PreprocessMethod truncated_svd(TruncationPolicy policy = TruncationPolicy::none());

  void validate() const {
    if (kind == Kind::TikhonovPpa && !(epsilon > 0.0))
      throw std::invalid_argument("PreprocessMethod: tikhonov_ppa requires epsilon > 0");
  }

  std::string name() const;
};

/// Parameters actually used by a preprocessing run, for output metadata.
using RunMetadata = std::map<std::string, std::string>;

/// The approximate minimum-norm least-squares solution of R x = g under the
/// chosen method. This is the expensive stage; it does not depend on the
/// mollifier, so callers sweeping cutoffs can reuse it.
Vec pseudo_solution(const LinearMap& r, const Vec& g, const PreprocessMethod& method,
                    RunMetadata* meta = nullptr);

/// Regularized data R(C(x_hat)) given the solve output.
Vec regularize_from_solution(const LinearMap& r, const LinearMap& c, const Vec& x_hat);

/// Full preprocessing g -> R C R\dag g (approximately, per method).
Vec regularize_data(const LinearMap& r, const LinearMap& c, const Vec& g,
                    const PreprocessMethod& method, RunMetadata* meta = nullptr);

/// Empirical error-propagation probe: perturbs g with seeded noise of the
/// given relative scale and reports ||gtilde(g+dg) - gtilde(g)|| / ||dg||.
struct StabilityReport {
  bool applicable = false;
  double amplification = 0.0;
  double perturbation_norm = 0.0;
  double output_delta_norm = 0.0;
};

StabilityReport preprocess_stability_probe(const LinearMap& r, const LinearMap& c,
                                           const Vec& g, const PreprocessMethod& method,
                                           double perturbation_scale, std::uint64_t seed);

}  // namespace tomoreg
