#include "tomoreg/preprocess.hpp"

#include <sstream>

#include "tomoreg/rng.hpp"

namespace tomoreg {

PreprocessMethod PreprocessMethod::ppa() {
  PreprocessMethod m;
  m.kind = Kind::Ppa;
  m.epsilon = 0.0;
  return m;
}

PreprocessMethod PreprocessMethod::tikhonov_ppa(double epsilon) {
  PreprocessMethod m;
  m.kind = Kind::TikhonovPpa;
  m.epsilon = epsilon;
  m.validate();
  return m;
}

PreprocessMethod PreprocessMethod::truncated_svd(TruncationPolicy policy) {
  PreprocessMethod m;
  m.kind = Kind::TruncatedSvd;
  m.policy = policy;
  return m;
}

std::string PreprocessMethod::name() const {
  switch (kind) {
    case Kind::Ppa: return "ppa";
    case Kind::TikhonovPpa: return "tikhonov_ppa";
    case Kind::TruncatedSvd: return "truncated_svd";
  }
  return "?";
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Vec pseudo_solution(const LinearMap& r, const Vec& g, const PreprocessMethod& method,
                    RunMetadata* meta) {
  method.validate();
  if (g.size() != r.out_dim())
    throw std::invalid_argument("pseudo_solution: data dimension mismatch");

  if (meta) (*meta)["preprocess.method"] = method.name();

  if (method.kind == PreprocessMethod::Kind::TruncatedSvd) {
    const Mat dense = materialize_dense(r);
    const auto f = svd_factor(dense);
    if (meta) (*meta)["preprocess.svd_rank"] = std::to_string(method.policy.kept(f));
    return pinv_apply(f, g, method.policy);
  }

  LambdaSchedule schedule = method.schedule;
  if (method.schedule_from_operator)
    schedule = LambdaSchedule::default_for(operator_norm_estimate(r));

  ProxConfig config = method.config;
  Vec x;
  ProxTrace trace;
  if (method.kind == PreprocessMethod::Kind::Ppa) {
    config.epsilon = 0.0;
    std::tie(x, trace) = ppa_min_norm_lsq(r, g, schedule, config);
  } else {
    config.epsilon = method.epsilon;
    std::tie(x, trace) = ppa_tikhonov(r, g, schedule, config);
  }

  if (meta) {
    (*meta)["preprocess.epsilon"] = fmt(config.epsilon);
    (*meta)["preprocess.lambda0"] = fmt(schedule.lambda0);
    (*meta)["preprocess.outer_tol"] = fmt(config.outer_tol);
    (*meta)["preprocess.inner_tol"] = fmt(config.inner_tol);
    (*meta)["preprocess.outer_iters"] = std::to_string(trace.records.size());
    (*meta)["preprocess.status"] =
        trace.status == ProxStatus::Converged ? "converged" : "max_outer_reached";
  }
  return x;
}

Vec regularize_from_solution(const LinearMap& r, const LinearMap& c, const Vec& x_hat) {
  if (c.in_dim() != r.in_dim() || c.out_dim() != r.in_dim())
    throw std::invalid_argument("regularize_from_solution: mollifier must act on image space");
  return r.forward(c.forward(x_hat));
}

Vec regularize_data(const LinearMap& r, const LinearMap& c, const Vec& g,
                    const PreprocessMethod& method, RunMetadata* meta) {
  if (c.in_dim() != r.in_dim() || c.out_dim() != r.in_dim())
    throw std::invalid_argument("regularize_data: mollifier must act on image space");
  return regularize_from_solution(r, c, pseudo_solution(r, g, method, meta));
}

StabilityReport preprocess_stability_probe(const LinearMap& r, const LinearMap& c,
                                           const Vec& g, const PreprocessMethod& method,
                                           double perturbation_scale, std::uint64_t seed) {
  StabilityReport report;
  if (perturbation_scale == 0.0) return report;  // 0/0, not applicable

  CounterRng rng(substream_seed(seed, "probes"));
  Vec dg(g.size());
  for (Index i = 0; i < g.size(); ++i)
    dg[i] = 2.0 * rng.uniform(static_cast<std::uint64_t>(i)) - 1.0;
  dg *= perturbation_scale * g.norm() / dg.norm();

  const Vec base = regularize_data(r, c, g, method);
  const Vec perturbed = regularize_data(r, c, g + dg, method);

  report.applicable = true;
  report.perturbation_norm = dg.norm();
  report.output_delta_norm = (perturbed - base).norm();
  report.amplification = report.output_delta_norm / report.perturbation_norm;
  return report;
}

}  // namespace tomoreg
