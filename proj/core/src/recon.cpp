#include "tomoreg/recon.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "tomoreg/fourier.hpp"
#include "tomoreg/radon.hpp"
#include "tomoreg/rng.hpp"

namespace tomoreg {

void ReconProblem::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("ReconProblem: alpha must be positive");
  if (projector.in_dim() != mollifier.in_dim() || mollifier.in_dim() != highpass.in_dim())
    throw std::invalid_argument("ReconProblem: operator dimensions disagree");
  if (data.size() != projector.out_dim())
    throw std::invalid_argument("ReconProblem: data dimension mismatch");

  // H must be the complement of C on a few random probes.
  CounterRng rng(0x70726f6265735f70ull);
  for (int trial = 0; trial < 3; ++trial) {
    Vec x(projector.in_dim());
    for (Index i = 0; i < x.size(); ++i)
      x[i] = rng.uniform(static_cast<std::uint64_t>(trial * x.size() + i)) - 0.5;
    const Vec sum = mollifier.forward(x) + highpass.forward(x);
    if ((sum - x).norm() > 1e-10 * (1.0 + x.norm()))
      throw std::invalid_argument("ReconProblem: highpass is not identity - mollifier");
  }
}

double CgState::ritz_norm_estimate() const {
  const auto m = static_cast<Index>(tri_diag.size());
  if (m < 2) return 0.0;
  Mat t = Mat::Zero(m, m);
  for (Index i = 0; i < m; ++i) t(i, i) = tri_diag[static_cast<size_t>(i)];
  for (Index i = 0; i + 1 < m; ++i) {
    t(i, i + 1) = tri_offdiag[static_cast<size_t>(i)];
    t(i + 1, i) = tri_offdiag[static_cast<size_t>(i)];
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(t, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

void CgState::write_csv(std::ostream& os) const {
  os << "k,residual,backward_error,energy\n";
  for (size_t k = 0; k < residual_history.size(); ++k)
    os << k << "," << residual_history[k] << "," << backward_error_history[k] << ","
       << energy_history[k] << "\n";
}

Vec normal_operator_apply(const ReconProblem& problem, const Vec& f) {
  if (f.size() != problem.projector.in_dim())
    throw std::invalid_argument("normal_operator_apply: dimension mismatch");
  return problem.projector.normal(f) +
         problem.alpha * problem.highpass.forward(problem.highpass.forward(f));
}

bool backward_error_stop(const CgState& state, double tol) {
  if (state.tri_diag.size() < 2) return false;
  const double a_norm = state.ritz_norm_estimate();
  const double denom = a_norm * state.iterate.norm() + state.b_norm;
  if (denom == 0.0) return true;
  return state.residual.norm() / denom <= tol;
}

namespace {

SolveResult solve_unconstrained(const ReconProblem& problem, double tol, int max_iters) {
  auto apply = [&](const Vec& f) { return normal_operator_apply(problem, f); };
  const Vec b = problem.projector.adjoint(problem.data);

  SolveResult out;
  CgState& st = out.state;
  st.iterate = Vec::Zero(problem.projector.in_dim());
  st.b_norm = b.norm();
  st.residual = b;
  st.direction = b;
  if (st.b_norm == 0.0) {
    st.converged = true;
    out.solution = st.iterate;
    return out;
  }

  double rs = st.residual.squaredNorm();
  double prev_alpha = 0.0;
  double prev_beta = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    const Vec ap = apply(st.direction);
    const double pap = st.direction.dot(ap);
    if (pap <= 0.0) break;
    const double alpha = rs / pap;
    st.iterate += alpha * st.direction;
    st.residual -= alpha * ap;
    double rs_next = st.residual.squaredNorm();

    // Lanczos tridiagonal entries from the CG scalars.
    if (it == 0) {
      st.tri_diag.push_back(1.0 / alpha);
    } else {
      st.tri_diag.push_back(1.0 / alpha + prev_beta / prev_alpha);
    }
    const double beta = rs_next / rs;
    st.tri_offdiag.push_back(std::sqrt(beta) / alpha);
    st.iterations = it + 1;

    // Periodic drift check: recompute the true residual.
    if ((it + 1) % 50 == 0) {
      const Vec true_res = b - apply(st.iterate);
      if ((true_res - st.residual).norm() > 1e-6 * (1.0 + true_res.norm())) {
        st.residual = true_res;
        rs_next = st.residual.squaredNorm();
      }
    }

    st.residual_history.push_back(std::sqrt(rs_next) / st.b_norm);
    const double a_est = st.ritz_norm_estimate();
    const double denom = a_est * st.iterate.norm() + st.b_norm;
    st.backward_error_history.push_back(denom > 0.0 ? std::sqrt(rs_next) / denom : 0.0);
    st.energy_history.push_back(0.5 * st.iterate.dot(apply(st.iterate)) - b.dot(st.iterate));

    if (std::sqrt(rs_next) / st.b_norm <= tol || backward_error_stop(st, tol)) {
      st.converged = true;
      break;
    }

    st.direction = st.residual + beta * st.direction;
    prev_alpha = alpha;
    prev_beta = beta;
    rs = rs_next;
  }
  // tri_offdiag has one trailing entry beyond the diagonal; trim it.
  if (!st.tri_offdiag.empty() && st.tri_offdiag.size() >= st.tri_diag.size())
    st.tri_offdiag.pop_back();
  out.solution = st.iterate;
  return out;
}

SolveResult solve_positive(const ReconProblem& problem, double tol, int max_iters) {
  auto apply = [&](const Vec& f) { return normal_operator_apply(problem, f); };
  const Vec b = problem.projector.adjoint(problem.data);

  // Step size from a power-iteration estimate of the normal operator norm.
  LinearMap normal_map(problem.projector.in_dim(), problem.projector.in_dim(), apply, apply);
  const double a_norm = operator_norm_estimate(normal_map, 30);
  const double step = a_norm > 0.0 ? 1.0 / a_norm : 1.0;

  SolveResult out;
  CgState& st = out.state;
  st.iterate = Vec::Zero(problem.projector.in_dim());
  st.b_norm = b.norm();
  for (int it = 0; it < max_iters; ++it) {
    const Vec grad = apply(st.iterate) - b;
    Vec next = (st.iterate - step * grad).cwiseMax(0.0);
    const double step_norm = (next - st.iterate).norm();
    st.iterate = std::move(next);
    st.iterations = it + 1;
    st.residual = b - apply(st.iterate);
    st.residual_history.push_back(st.b_norm > 0.0 ? st.residual.norm() / st.b_norm : 0.0);
    st.backward_error_history.push_back(0.0);  // no Ritz data in this mode
    st.energy_history.push_back(0.5 * st.iterate.dot(apply(st.iterate)) - b.dot(st.iterate));
    if (step_norm <= tol * (1.0 + st.iterate.norm())) {
      st.converged = true;
      break;
    }
  }
  out.solution = st.iterate;
  return out;
}

}  // namespace

SolveResult solve_problem_p(const ReconProblem& problem, double tol, int max_iters) {
  problem.validate();
  if (!(tol > 0.0) || max_iters < 1)
    throw std::invalid_argument("solve_problem_p: invalid tolerance or iteration budget");
  return problem.positivity ? solve_positive(problem, tol, max_iters)
                            : solve_unconstrained(problem, tol, max_iters);
}

ImageGrid fbp_reconstruct(const Sinogram& g, double cutoff_nyquist,
                          const GeometryConfig& geom) {
  if (!(cutoff_nyquist > 0.0) || cutoff_nyquist > 1.0)
    throw std::invalid_argument("fbp_reconstruct: cutoff must be in (0, 1]");
  g.validate();

  const Index nb = geom.n_bins;
  Vec transfer(nb);
  for (Index k = 0; k < nb; ++k) {
    // Frequency in cycles per bin; Nyquist is 0.5.
    const double nu = std::abs(static_cast<double>(dft_frequency(k, nb))) /
                      static_cast<double>(nb);
    const double nu_nyq = nu / 0.5;  // Nyquist units
    transfer[k] = nu_nyq <= cutoff_nyquist
                      ? nu * 0.5 * (1.0 + std::cos(std::numbers::pi * nu_nyq / cutoff_nyquist))
                      : 0.0;
  }

  const Vec filtered = apply_transfer_1d_rows(g.values, transfer, geom.n_angles, nb);

  GeometryConfig ideal = geom;  // FBP back-projects with the ideal adjoint
  ideal.response_sigma0 = 0.0;
  ideal.response_sigma_slope = 0.0;
  const LinearMap radon = build_radon_projector(ideal);
  Vec img = radon.adjoint(filtered);
  img *= std::numbers::pi / static_cast<double>(geom.n_angles);
  return ImageGrid(geom.n, std::move(img));
}

}  // namespace tomoreg
