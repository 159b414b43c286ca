#pragma once

#include <functional>
#include <ostream>
#include <utility>
#include <vector>

#include "tomoreg/linear_map.hpp"
#include "tomoreg/types.hpp"

namespace tomoreg {

/// Step-size sequence (lambda_k). All three kinds have a divergent sum.
struct LambdaSchedule {
  enum class Kind { Constant, Harmonic, GeometricFloor };
  Kind kind = Kind::Constant;
  double lambda0 = 1.0;
  double rho = 0.7;
  double lambda_min = 1.0;

  static LambdaSchedule constant(double lambda);
  static LambdaSchedule harmonic(double lambda0);
  static LambdaSchedule geometric_floor(double lambda0, double rho, double lambda_min);

  /// Default for a projector with the given operator-norm estimate:
  /// starts at 100/||R||^2 and decays geometrically down to a floor.
  static LambdaSchedule default_for(double operator_norm);

  double value(int k) const;
};

struct ProxConfig {
  double epsilon = 0.0;     // Tikhonov shift
  double outer_tol = 1e-8;  // stop when ||x_{k+1}-x_k|| <= outer_tol*(1+||x_k||)
  int max_outer = 500;
  double inner_tol = 1e-12; // inner CG relative residual
  int max_inner = 10000;

  void validate() const {
    if (!(outer_tol > 0.0) || !(inner_tol > 0.0) || max_outer < 1 || max_inner < 1 ||
        epsilon < 0.0 || !std::isfinite(epsilon))
      throw std::invalid_argument("ProxConfig: invalid tolerances");
  }
};

enum class ProxStatus { Converged, MaxOuterReached };

struct ProxRecord {
  int k = 0;
  double lambda = 0.0;
  double objective = 0.0;
  double step_norm = 0.0;
  int inner_iters = 0;
};

struct ProxTrace {
  std::vector<ProxRecord> records;
  ProxStatus status = ProxStatus::MaxOuterReached;

  /// CSV with header `k,lambda,objective,step_norm,inner_iters`.
  void write_csv(std::ostream& os) const;
};

struct CgResult {
  Vec x;
  int iterations = 0;
  double rel_residual = 0.0;
  bool converged = false;
};

/// Plain CG on a symmetric positive definite operator, warm-started from x0.
CgResult conjugate_gradient(const std::function<Vec(const Vec&)>& apply, const Vec& b,
                            const Vec& x0, double tol, int max_iter);

/// One proximal step: the minimizer of
///   0.5*||g - R f||^2 + (epsilon/2)*||f||^2 + ||f - x_k||^2/(2*lambda),
/// i.e. the CG solution of (R'R + (epsilon + 1/lambda) I) f = R'g + x_k/lambda.
/// Throws if the inner solver fails to reach tolerance within max_inner.
Vec prox_step(const LinearMap& r, const Vec& g, const Vec& x_k, double lambda,
              double epsilon, const ProxConfig& inner, int* inner_iters = nullptr);

/// Proximal iteration from the zero start; the limit is the minimum-norm
/// least-squares solution (every step stays in the range of R').
std::pair<Vec, ProxTrace> ppa_min_norm_lsq(const LinearMap& r, const Vec& g,
                                           const LambdaSchedule& schedule,
                                           const ProxConfig& config);

/// Tikhonov-shifted proximal iteration; the limit solves (R'R + eps I) f = R'g.
std::pair<Vec, ProxTrace> ppa_tikhonov(const LinearMap& r, const Vec& g,
                                       const LambdaSchedule& schedule,
                                       const ProxConfig& config);

/// h(f) = (I + lambda R'R)^{-1} (f + lambda R'g); the minimum-norm
/// least-squares solution is its fixed point. Identical to prox_step with
/// epsilon = 0 and x_k = f.
Vec fixed_point_map(const LinearMap& r, const Vec& g, double lambda, const Vec& f,
                    const ProxConfig& inner = ProxConfig{});

/// Proximal iterates for F(x) = 0.5 x'Qx - b'x with dense PSD Q; the test
/// harness for the convergence properties (monotone objective, Fejer
/// monotonicity, convergence under divergent schedules).
std::pair<Vec, ProxTrace> ppa_quadratic(const Mat& q, const Vec& b, const Vec& x0,
                                        const LambdaSchedule& schedule,
                                        const ProxConfig& config);

}  // namespace tomoreg
