#include <benchmark/benchmark.h>

#include <random>

#include "tomoreg/mollifier.hpp"
#include "tomoreg/phantom.hpp"
#include "tomoreg/proximal.hpp"
#include "tomoreg/radon.hpp"
#include "tomoreg/recon.hpp"

using namespace tomoreg;

namespace {

Vec random_vec(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  Vec v(n);
  for (Index i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

void bm_projector_forward(benchmark::State& state) {
  const Index n = state.range(0);
  GeometryConfig geom{n, n, n};
  const LinearMap r = build_radon_projector(geom);
  const Vec x = random_vec(n * n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(r.forward(x));
}

void bm_projector_adjoint(benchmark::State& state) {
  const Index n = state.range(0);
  GeometryConfig geom{n, n, n};
  const LinearMap r = build_radon_projector(geom);
  const Vec y = random_vec(n * n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(r.adjoint(y));
}

void bm_mollifier_apply(benchmark::State& state) {
  const Index n = state.range(0);
  const MollifierSpec spec{MollifierSpec::Kind::Hann, 0.6, n};
  const LinearMap c = build_mollifier(spec);
  const Vec x = random_vec(n * n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(c.forward(x));
}

void bm_prox_step(benchmark::State& state) {
  const Index n = state.range(0);
  GeometryConfig geom{n, n, n};
  const LinearMap r = build_radon_projector(geom);
  const Vec g = r.forward(random_vec(n * n, 4).cwiseAbs());
  const Vec x0 = Vec::Zero(n * n);
  ProxConfig cfg;
  cfg.inner_tol = 1e-8;
  for (auto _ : state) benchmark::DoNotOptimize(prox_step(r, g, x0, 1.0, 1e-6, cfg));
}

void bm_solve_problem(benchmark::State& state) {
  const Index n = state.range(0);
  GeometryConfig geom{n, n, n};
  const MollifierSpec spec{MollifierSpec::Kind::Hann, 0.6, n};
  PhantomSpec pspec;
  pspec.n = n;
  const LinearMap r = build_radon_projector(geom);
  const Vec g = r.forward(shepp_logan(pspec).values);
  for (auto _ : state) {
    ReconProblem p{r, build_mollifier(spec), build_highpass(spec), 1.0, g, false};
    benchmark::DoNotOptimize(solve_problem_p(p, 1e-6, 500));
  }
}

BENCHMARK(bm_projector_forward)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(bm_projector_adjoint)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(bm_mollifier_apply)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(bm_prox_step)->Arg(32)->Arg(64);
BENCHMARK(bm_solve_problem)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
