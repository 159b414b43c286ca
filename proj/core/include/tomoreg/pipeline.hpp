#pragma once

#include <string>
#include <vector>

#include "tomoreg/config.hpp"

namespace tomoreg {

/// Writes phantom, clean sinogram and noisy sinogram (raw float + graymap)
/// into the configured output directory.
void cmd_simulate(const RunConfig& cfg);

/// Computes the regularized data for every cutoff and writes it alongside a
/// metadata sidecar. Requires cmd_simulate outputs.
void cmd_preprocess(const RunConfig& cfg);

struct ReconStatus {
  // labels of solves that hit their iteration budget without converging
  std::vector<std::string> nonconverged;
  bool all_converged() const { return nonconverged.empty(); }
};

/// For each cutoff: mollified target, reconstruction without preprocessing,
/// reconstruction with preprocessing (unless skipped), FBP baseline, plus
/// solver traces. Consumes cmd_simulate outputs; reuses cmd_preprocess
/// outputs when present, computes them otherwise.
ReconStatus cmd_reconstruct(const RunConfig& cfg, bool skip_preprocess = false);

struct EvaluateResult {
  std::vector<double> cutoffs;
  std::vector<double> without_pre;
  std::vector<double> with_pre;
  std::vector<double> fbp;

  /// Table-level ordering: with < without < fbp at every cutoff.
  bool ordering_ok() const;
};

/// Computes the normalized quadratic errors from files and writes metrics.csv
/// plus a pass/fail ordering report. Consumes only files.
EvaluateResult cmd_evaluate(const RunConfig& cfg);

/// Tag like "c050" used in per-cutoff file names.
std::string cutoff_tag(double cutoff);

}  // namespace tomoreg
