#include "tomoreg/proximal.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace tomoreg {

LambdaSchedule LambdaSchedule::constant(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("LambdaSchedule: lambda must be positive");
  return {Kind::Constant, lambda, 0.0, 0.0};
}

LambdaSchedule LambdaSchedule::harmonic(double lambda0) {
  if (!(lambda0 > 0.0)) throw std::invalid_argument("LambdaSchedule: lambda0 must be positive");
  return {Kind::Harmonic, lambda0, 0.0, 0.0};
}

LambdaSchedule LambdaSchedule::geometric_floor(double lambda0, double rho, double lambda_min) {
  if (!(lambda0 > 0.0) || !(rho > 0.0) || rho >= 1.0 || !(lambda_min > 0.0) ||
      lambda_min > lambda0)
    throw std::invalid_argument("LambdaSchedule: invalid geometric-floor parameters");
  return {Kind::GeometricFloor, lambda0, rho, lambda_min};
}

LambdaSchedule LambdaSchedule::default_for(double operator_norm) {
  const double scale = operator_norm > 0.0 ? 1.0 / (operator_norm * operator_norm) : 1.0;
  const double lambda0 = 100.0 * scale;
  return geometric_floor(lambda0, 0.7, std::min(1.0, lambda0));
}

double LambdaSchedule::value(int k) const {
  switch (kind) {
    case Kind::Constant:
      return lambda0;
    case Kind::Harmonic:
      return lambda0 / static_cast<double>(k + 1);
    case Kind::GeometricFloor:
      return std::max(lambda0 * std::pow(rho, k), lambda_min);
  }
  return lambda0;
}

void ProxTrace::write_csv(std::ostream& os) const {
  os << "k,lambda,objective,step_norm,inner_iters\n";
  for (const auto& rec : records)
    os << rec.k << "," << rec.lambda << "," << rec.objective << "," << rec.step_norm
       << "," << rec.inner_iters << "\n";
}

CgResult conjugate_gradient(const std::function<Vec(const Vec&)>& apply, const Vec& b,
                            const Vec& x0, double tol, int max_iter) {
  CgResult res;
  res.x = x0;
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    res.x.setZero();
    res.converged = true;
    return res;
  }
  Vec r = b - apply(res.x);
  Vec p = r;
  double rs = r.squaredNorm();
  res.rel_residual = std::sqrt(rs) / bnorm;
  if (res.rel_residual <= tol) {
    res.converged = true;
    return res;
  }
  for (int it = 0; it < max_iter; ++it) {
    const Vec ap = apply(p);
    const double pap = p.dot(ap);
    if (pap <= 0.0) break;  // loss of positive definiteness in finite precision
    const double alpha = rs / pap;
    res.x += alpha * p;
    r -= alpha * ap;
    const double rs_next = r.squaredNorm();
    res.iterations = it + 1;
    res.rel_residual = std::sqrt(rs_next) / bnorm;
    if (res.rel_residual <= tol) {
      res.converged = true;
      return res;
    }
    p = r + (rs_next / rs) * p;
    rs = rs_next;
  }
  return res;
}

Vec prox_step(const LinearMap& r, const Vec& g, const Vec& x_k, double lambda,
              double epsilon, const ProxConfig& inner, int* inner_iters) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("prox_step: lambda must be positive");
  if (epsilon < 0.0) throw std::invalid_argument("prox_step: epsilon must be nonnegative");
  const double shift = epsilon + 1.0 / lambda;
  auto apply = [&](const Vec& f) -> Vec { return r.normal(f) + shift * f; };
  const Vec rhs = r.adjoint(g) + x_k / lambda;
  const CgResult cg = conjugate_gradient(apply, rhs, x_k, inner.inner_tol, inner.max_inner);
  if (inner_iters) *inner_iters = cg.iterations;
  if (!cg.converged)
    throw std::runtime_error("prox_step: inner CG failed to reach tolerance (residual " +
                             std::to_string(cg.rel_residual) + ")");
  return cg.x;
}

namespace {

std::pair<Vec, ProxTrace> ppa_run(const LinearMap& r, const Vec& g,
                                  const LambdaSchedule& schedule, const ProxConfig& config) {
  config.validate();
  auto objective = [&](const Vec& x) {
    double val = 0.5 * (g - r.forward(x)).squaredNorm();
    if (config.epsilon > 0.0) val += 0.5 * config.epsilon * x.squaredNorm();
    return val;
  };

  Vec x = Vec::Zero(r.in_dim());
  ProxTrace trace;
  trace.records.reserve(static_cast<size_t>(config.max_outer));
  for (int k = 0; k < config.max_outer; ++k) {
    const double lambda = schedule.value(k);
    int inner_iters = 0;
    const Vec x_next = prox_step(r, g, x, lambda, config.epsilon, config, &inner_iters);
    const double step_norm = (x_next - x).norm();
    trace.records.push_back({k, lambda, objective(x_next), step_norm, inner_iters});
    const bool done = step_norm <= config.outer_tol * (1.0 + x.norm());
    x = x_next;
    if (done) {
      trace.status = ProxStatus::Converged;
      return {std::move(x), std::move(trace)};
    }
  }
  trace.status = ProxStatus::MaxOuterReached;
  return {std::move(x), std::move(trace)};
}

}  // namespace

std::pair<Vec, ProxTrace> ppa_min_norm_lsq(const LinearMap& r, const Vec& g,
                                           const LambdaSchedule& schedule,
                                           const ProxConfig& config) {
  if (config.epsilon != 0.0)
    throw std::invalid_argument("ppa_min_norm_lsq: epsilon must be zero");
  return ppa_run(r, g, schedule, config);
}

std::pair<Vec, ProxTrace> ppa_tikhonov(const LinearMap& r, const Vec& g,
                                       const LambdaSchedule& schedule,
                                       const ProxConfig& config) {
  if (!(config.epsilon > 0.0))
    throw std::invalid_argument("ppa_tikhonov: epsilon must be positive");
  return ppa_run(r, g, schedule, config);
}

Vec fixed_point_map(const LinearMap& r, const Vec& g, double lambda, const Vec& f,
                    const ProxConfig& inner) {
  return prox_step(r, g, f, lambda, 0.0, inner);
}

std::pair<Vec, ProxTrace> ppa_quadratic(const Mat& q, const Vec& b, const Vec& x0,
                                        const LambdaSchedule& schedule,
                                        const ProxConfig& config) {
  config.validate();
  if (q.rows() != q.cols() || q.rows() != b.size() || x0.size() != b.size())
    throw std::invalid_argument("ppa_quadratic: shape mismatch");
  if ((q - q.transpose()).norm() > 1e-12 * (1.0 + q.norm()))
    throw std::invalid_argument("ppa_quadratic: Q must be symmetric");

  auto objective = [&](const Vec& x) { return 0.5 * x.dot(q * x) - b.dot(x); };

  Vec x = x0;
  ProxTrace trace;
  for (int k = 0; k < config.max_outer; ++k) {
    const double lambda = schedule.value(k);
    const double shift = 1.0 / lambda;
    const Mat sys = q + shift * Mat::Identity(q.rows(), q.cols());
    const Vec x_next = Eigen::LDLT<Mat>(sys).solve(b + shift * x);
    const double step_norm = (x_next - x).norm();
    trace.records.push_back({k, lambda, objective(x_next), step_norm, 0});
    const bool done = step_norm <= config.outer_tol * (1.0 + x.norm());
    x = x_next;
    if (done) {
      trace.status = ProxStatus::Converged;
      return {std::move(x), std::move(trace)};
    }
  }
  trace.status = ProxStatus::MaxOuterReached;
  return {std::move(x), std::move(trace)};
}

}  // namespace tomoreg
