#pragma once

#include <ostream>
#include <vector>

#include "tomoreg/linear_map.hpp"
#include "tomoreg/types.hpp"

namespace tomoreg {

/// Variational reconstruction problem: minimize
///   0.5*||data - R f||^2 + (alpha/2)*||H f||^2   (optionally over f >= 0).
struct ReconProblem {
  LinearMap projector;  // R
  LinearMap mollifier;  // C
  LinearMap highpass;   // H = I - C
  double alpha = 1.0;
  Vec data;             // preprocessed or raw sinogram values
  bool positivity = false;

  void validate() const;
};

/// Conjugate-gradient solver state, including the Galerkin (Lanczos)
/// tridiagonal coefficients accumulated from the CG scalars.
struct CgState {
  Vec iterate;
  Vec residual;
  Vec direction;
  std::vector<double> tri_diag;     // grows by one entry per iteration
  std::vector<double> tri_offdiag;  // one shorter than tri_diag
  int iterations = 0;
  double b_norm = 0.0;
  bool converged = false;

  // per-iteration history for the trace CSV
  std::vector<double> residual_history;
  std::vector<double> backward_error_history;
  std::vector<double> energy_history;  // 0.5 f'Af - b'f

  /// Largest Ritz value of the accumulated tridiagonal matrix; the solver's
  /// running estimate of ||A||. Zero until two iterations have completed.
  double ritz_norm_estimate() const;

  /// CSV with header `k,residual,backward_error,energy`.
  void write_csv(std::ostream& os) const;
};

/// (R'R + alpha H'H) f; symmetric positive semidefinite (H is self-adjoint).
Vec normal_operator_apply(const ReconProblem& problem, const Vec& f);

struct SolveResult {
  Vec solution;
  CgState state;
};

/// Unconstrained mode: CG on the normal system from a zero start, stopping on
/// the backward-error criterion or the relative residual. Positivity mode:
/// projected gradient onto the nonnegative orthant, stopping on relative step
/// norm. Hitting max_iters is a status, not an error.
SolveResult solve_problem_p(const ReconProblem& problem, double tol, int max_iters);

/// Normwise backward error eta = ||b - A f|| / (||A||_est * ||f|| + ||b||)
/// with the largest Ritz value as the norm estimate. False before two
/// iterations of tridiagonal data exist.
bool backward_error_stop(const CgState& state, double tol);

/// Parallel-beam filtered back-projection: ramp * Hann filtering per angle,
/// then ideal back-projection with pi/n_angles angular weighting.
ImageGrid fbp_reconstruct(const Sinogram& g, double cutoff_nyquist,
                          const GeometryConfig& geom);

}  // namespace tomoreg
