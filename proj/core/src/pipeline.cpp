#include "tomoreg/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "tomoreg/io.hpp"
#include "tomoreg/metrics.hpp"
#include "tomoreg/mollifier.hpp"
#include "tomoreg/phantom.hpp"
#include "tomoreg/preprocess.hpp"
#include "tomoreg/radon.hpp"
#include "tomoreg/recon.hpp"

namespace tomoreg {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

ImageGrid make_phantom(const RunConfig& cfg) {
  PhantomSpec spec;
  spec.n = cfg.geometry.n;
  if (!cfg.phantom_file.empty()) spec.ellipses = read_ellipse_file(cfg.phantom_file);
  return shepp_logan(spec);
}

void write_image_outputs(const fs::path& dir, const std::string& base, const Vec& values,
                         Index rows, Index cols, RunMetadata meta, const RunConfig& cfg) {
  write_raw_matrix(dir / (base + ".raw"), values, rows, cols);
  write_pgm16(dir / (base + ".pgm"), values, rows, cols);
  meta["config_hash"] = cfg.hash();
  write_metadata(dir / (base + ".meta"), meta);
}

// Noisy data rescaled from count units back to the clean projection's scale,
// so reconstructions and the error metric live on the phantom's scale.
Sinogram load_scaled_noisy(const fs::path& dir, const RunConfig& cfg) {
  const Sinogram clean = read_raw_sinogram(dir / "sino.raw", cfg.geometry);
  Sinogram noisy = read_raw_sinogram(dir / "sino_noisy.raw", cfg.geometry);
  const double clean_total = clean.values.sum();
  if (clean_total > 0.0)
    noisy.values *= clean_total / cfg.noise_total_counts;
  return noisy;
}

PreprocessMethod method_from_config(const RunConfig& cfg, double projector_norm) {
  PreprocessMethod m;
  if (cfg.preprocess_method == "ppa") {
    m = PreprocessMethod::ppa();
  } else if (cfg.preprocess_method == "tikhonov_ppa") {
    m = PreprocessMethod::tikhonov_ppa(cfg.preprocess_epsilon_rel * projector_norm *
                                       projector_norm);
  } else {
    m = PreprocessMethod::truncated_svd();
  }
  m.config.outer_tol = cfg.preprocess_outer_tol;
  m.config.max_outer = cfg.preprocess_max_outer;
  m.config.inner_tol = cfg.preprocess_inner_tol;
  m.config.max_inner = cfg.preprocess_max_inner;
  return m;
}

}  // namespace

std::string cutoff_tag(double cutoff) {
  const int v = static_cast<int>(std::lround(cutoff * 100.0));
  std::ostringstream os;
  os << "c" << (v < 100 ? "0" : "") << (v < 10 ? "0" : "") << v;
  return os.str();
}

void cmd_simulate(const RunConfig& cfg) {
  cfg.validate();
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);

  const ImageGrid phantom = make_phantom(cfg);
  const LinearMap radon = build_radon_projector(cfg.geometry);
  const Sinogram sino = forward_project(radon, phantom, cfg.geometry);
  const Sinogram noisy = poisson_corrupt(sino, cfg.noise_spec());

  RunMetadata meta;
  meta["seed"] = std::to_string(cfg.seed);
  meta["noise.total_counts"] = fmt(cfg.noise_total_counts);
  meta["noise.realized_total"] = fmt(noisy.values.sum());

  write_image_outputs(dir, "phantom", phantom.values, phantom.n, phantom.n, meta, cfg);
  write_image_outputs(dir, "sino", sino.values, sino.n_angles, sino.n_bins, meta, cfg);
  write_image_outputs(dir, "sino_noisy", noisy.values, noisy.n_angles, noisy.n_bins, meta, cfg);
}

void cmd_preprocess(const RunConfig& cfg) {
  cfg.validate();
  const fs::path dir(cfg.out_dir);
  const Sinogram noisy = load_scaled_noisy(dir, cfg);

  const LinearMap radon = build_radon_projector(cfg.geometry);
  const double r_norm = operator_norm_estimate(radon);
  const PreprocessMethod method = method_from_config(cfg, r_norm);

  RunMetadata meta;
  meta["projector_norm_estimate"] = fmt(r_norm);
  const Vec x_hat = pseudo_solution(radon, noisy.values, method, &meta);

  for (double cutoff : cfg.cutoffs) {
    const MollifierSpec mspec{MollifierSpec::Kind::Hann, cutoff, cfg.geometry.n};
    const LinearMap c = build_mollifier(mspec);
    const Vec gtilde = regularize_from_solution(radon, c, x_hat);
    RunMetadata m = meta;
    m["mollifier.cutoff"] = fmt(cutoff);
    write_image_outputs(dir, "sino_pre_" + cutoff_tag(cutoff), gtilde, cfg.geometry.n_angles,
                        cfg.geometry.n_bins, m, cfg);
  }
}

ReconStatus cmd_reconstruct(const RunConfig& cfg, bool skip_preprocess) {
  cfg.validate();
  const fs::path dir(cfg.out_dir);
  const ImageGrid phantom = read_raw_image(dir / "phantom.raw");
  const Sinogram noisy = load_scaled_noisy(dir, cfg);

  const LinearMap radon = build_radon_projector(cfg.geometry);
  const double r_norm = operator_norm_estimate(radon);

  // Pseudo-inverse solve shared across cutoffs (computed lazily, only when
  // some cutoff lacks a preprocessed sinogram on disk).
  Vec x_hat;
  bool have_x_hat = false;
  RunMetadata solve_meta;

  ReconStatus status;
  for (double cutoff : cfg.cutoffs) {
    const std::string tag = cutoff_tag(cutoff);
    const MollifierSpec mspec{MollifierSpec::Kind::Hann, cutoff, cfg.geometry.n};
    const LinearMap c = build_mollifier(mspec);
    const LinearMap h = build_highpass(mspec);
    const double h_norm = operator_norm_estimate(h);

    // Mollified target C f0.
    const Vec target = c.forward(phantom.values);
    write_image_outputs(dir, "target_" + tag, target, cfg.geometry.n, cfg.geometry.n,
                        {{"mollifier.cutoff", fmt(cutoff)}}, cfg);

    // alpha is scale-free: data term and penalty are normalized by the
    // operator-norm estimates before the weight is applied.
    const double alpha_eff =
        cfg.recon_alpha * (r_norm * r_norm) / (h_norm > 0.0 ? h_norm * h_norm : 1.0);

    auto run_solve = [&](const Vec& data, const std::string& label) -> Vec {
      ReconProblem problem{radon, c, h, alpha_eff, data, cfg.recon_positivity};
      const SolveResult res = solve_problem_p(problem, cfg.recon_tol, cfg.recon_max_iters);
      if (!res.state.converged) status.nonconverged.push_back(label + "_" + tag);
      RunMetadata meta{{"mollifier.cutoff", fmt(cutoff)},
                       {"recon.alpha", fmt(cfg.recon_alpha)},
                       {"recon.alpha_effective", fmt(alpha_eff)},
                       {"recon.iterations", std::to_string(res.state.iterations)},
                       {"recon.status", res.state.converged ? "converged" : "max_iters_reached"}};
      write_image_outputs(dir, "recon_" + label + "_" + tag, res.solution, cfg.geometry.n,
                          cfg.geometry.n, meta, cfg);
      std::ofstream trace(dir / ("trace_" + label + "_" + tag + ".csv"));
      res.state.write_csv(trace);
      return res.solution;
    };

    run_solve(noisy.values, "nopre");

    if (!skip_preprocess) {
      Vec gtilde;
      const fs::path pre_path = dir / ("sino_pre_" + tag + ".raw");
      if (fs::exists(pre_path)) {
        gtilde = read_raw_sinogram(pre_path, cfg.geometry).values;
      } else {
        if (!have_x_hat) {
          const PreprocessMethod method = method_from_config(cfg, r_norm);
          x_hat = pseudo_solution(radon, noisy.values, method, &solve_meta);
          have_x_hat = true;
        }
        gtilde = regularize_from_solution(radon, c, x_hat);
        RunMetadata m = solve_meta;
        m["mollifier.cutoff"] = fmt(cutoff);
        write_image_outputs(dir, "sino_pre_" + tag, gtilde, cfg.geometry.n_angles,
                            cfg.geometry.n_bins, m, cfg);
      }
      run_solve(gtilde, "pre");
    }

    const double fbp_cut = cfg.fbp_cutoff > 0.0 ? cfg.fbp_cutoff : cutoff;
    const ImageGrid fbp = fbp_reconstruct(noisy, fbp_cut, cfg.geometry);
    write_image_outputs(dir, "fbp_" + tag, fbp.values, cfg.geometry.n, cfg.geometry.n,
                        {{"fbp.cutoff", fmt(fbp_cut)}}, cfg);
  }
  return status;
}

bool EvaluateResult::ordering_ok() const {
  for (size_t i = 0; i < cutoffs.size(); ++i)
    if (!(with_pre[i] < without_pre[i] && without_pre[i] < fbp[i])) return false;
  return !cutoffs.empty();
}

EvaluateResult cmd_evaluate(const RunConfig& cfg) {
  cfg.validate();
  const fs::path dir(cfg.out_dir);
  const ImageGrid phantom = read_raw_image(dir / "phantom.raw");

  EvaluateResult result;
  for (double cutoff : cfg.cutoffs) {
    const std::string tag = cutoff_tag(cutoff);
    const MollifierSpec mspec{MollifierSpec::Kind::Hann, cutoff, cfg.geometry.n};
    const LinearMap c = build_mollifier(mspec);

    const ImageGrid nopre = read_raw_image(dir / ("recon_nopre_" + tag + ".raw"));
    const ImageGrid fbp = read_raw_image(dir / ("fbp_" + tag + ".raw"));

    result.cutoffs.push_back(cutoff);
    result.without_pre.push_back(normalized_quadratic_error(nopre, phantom, c));
    result.fbp.push_back(normalized_quadratic_error(fbp, phantom, c));

    const fs::path pre_path = dir / ("recon_pre_" + tag + ".raw");
    if (fs::exists(pre_path)) {
      result.with_pre.push_back(
          normalized_quadratic_error(read_raw_image(pre_path), phantom, c));
    } else {
      result.with_pre.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }

  {
    std::ostringstream csv;
    csv << "cutoff,without_preproc,with_preproc,fbp\n";
    csv.precision(6);
    csv << std::fixed;
    for (size_t i = 0; i < result.cutoffs.size(); ++i)
      csv << result.cutoffs[i] << "," << result.without_pre[i] << "," << result.with_pre[i]
          << "," << result.fbp[i] << "\n";
    std::ofstream os(dir / "metrics.csv");
    os << csv.str();
  }
  {
    std::ofstream os(dir / "ordering_report.txt");
    for (size_t i = 0; i < result.cutoffs.size(); ++i) {
      const bool ok = result.with_pre[i] < result.without_pre[i] &&
                      result.without_pre[i] < result.fbp[i];
      os << (ok ? "PASS" : "FAIL") << " cutoff " << result.cutoffs[i]
         << ": with=" << result.with_pre[i] << " without=" << result.without_pre[i]
         << " fbp=" << result.fbp[i] << "\n";
    }
    os << (result.ordering_ok() ? "PASS" : "FAIL") << " overall ordering\n";
  }
  return result;
}

}  // namespace tomoreg
