// Microbenchmarks for the hot paths: synthesis, norms, leverage machinery,
// the sampled regression, and the two search strategies.

#include <tsketch/generate.hpp>
#include <tsketch/leverage.hpp>
#include <tsketch/recovery.hpp>
#include <tsketch/rng.hpp>
#include <tsketch/structure.hpp>
#include <tsketch/toeplitz.hpp>

#include <benchmark/benchmark.h>

#include <Eigen/Dense>
#include <vector>

using namespace tsketch;

namespace {

FourierFactor random_factor(int d, int s, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> freqs;
  while (static_cast<int>(freqs.size()) < s) {
    const double f = rng.uniform(1e-3, 0.5 - 1e-3);
    bool ok = true;
    for (double g : freqs) ok = ok && std::abs(f - g) > 1e-6;
    if (ok) freqs.push_back(f);
  }
  Eigen::VectorXd w(s);
  for (int i = 0; i < s; ++i) w(i) = rng.uniform(0.5, 1.5);
  return FourierFactor(d, FrequencySet(freqs), w);
}

void BM_VandermondeSynthesize(benchmark::State& state) {
  const FourierFactor factor = random_factor(1024, 8, 1);
  for (auto _ : state) benchmark::DoNotOptimize(vandermonde_synthesize(factor));
}
BENCHMARK(BM_VandermondeSynthesize);

void BM_FrobeniusWeighted(benchmark::State& state) {
  const int d = 2048;
  Rng rng(2);
  Eigen::VectorXd a(d), b(d);
  for (int i = 0; i < d; ++i) {
    a(i) = rng.gaussian();
    b(i) = rng.gaussian();
  }
  const SymToeplitz A(d, a), B(d, b);
  for (auto _ : state) benchmark::DoNotOptimize(frobenius_via_weighted_column(A, B));
}
BENCHMARK(BM_FrobeniusWeighted);

void BM_UniversalTauBounds(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(universal_tau_bounds(4096, 16));
}
BENCHMARK(BM_UniversalTauBounds);

void BM_ExactLeverageScores(benchmark::State& state) {
  Rng rng(3);
  Eigen::MatrixXd A(512, 16);
  for (int i = 0; i < 512; ++i)
    for (int j = 0; j < 16; ++j) A(i, j) = rng.gaussian();
  for (auto _ : state) benchmark::DoNotOptimize(exact_leverage_scores(A));
}
BENCHMARK(BM_ExactLeverageScores);

void BM_DrawSamplingPlan(benchmark::State& state) {
  const LevBounds bounds = universal_tau_bounds(4096, 16);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(draw_sampling_plan(bounds, 512, ++seed));
}
BENCHMARK(BM_DrawSamplingPlan);

void BM_SolveSampledRegression(benchmark::State& state) {
  const int d = 1024;
  const FourierFactor factor = random_factor(d, 8, 4);
  const SymToeplitz T = vandermonde_synthesize(factor);
  std::vector<double> grid;
  for (int j = 1; j <= 16; ++j) grid.push_back(j / 40.0);
  const FrequencySet S(grid);
  const LevBounds bounds = universal_tau_bounds(d, 16);
  const SamplingPlan plan = draw_sampling_plan(bounds, 256, 5);
  Eigen::VectorXd target(plan.m);
  for (int j = 0; j < plan.m; ++j)
    target(j) = T.first_column(plan.indices[static_cast<std::size_t>(j)]);
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_sampled_regression(S, plan, target, d));
}
BENCHMARK(BM_SolveSampledRegression);

void BM_GreedySearch(benchmark::State& state) {
  const int d = 256;
  const FourierFactor factor = random_factor(d, 2, 6);
  const SymToeplitz T = vandermonde_synthesize(factor);
  const SearchSpace space = make_search_space(d, 2, 2, 1.0 / (8.0 * d * 2));
  const LevBounds bounds = universal_tau_bounds(d, 16);
  const SamplingPlan plan = draw_sampling_plan(bounds, 48, 7);
  Eigen::VectorXd target(plan.m);
  for (int j = 0; j < plan.m; ++j)
    target(j) = T.first_column(plan.indices[static_cast<std::size_t>(j)]);
  for (auto _ : state)
    benchmark::DoNotOptimize(greedy_search(space, plan, target, space.r1));
}
BENCHMARK(BM_GreedySearch);

void BM_ClusteredApprox(benchmark::State& state) {
  const int d = 128;
  const double f_star = 0.23;
  Rng rng(8);
  std::vector<double> freqs;
  for (int i = 0; i < 3; ++i) freqs.push_back(f_star + rng.uniform(-0.4 / d, 0.4 / d));
  Eigen::VectorXd w(3);
  for (int i = 0; i < 3; ++i) w(i) = rng.uniform(0.5, 1.5);
  const FourierFactor cluster(d, FrequencySet(freqs), w);
  ClusterApproxParams params;
  params.ell = 8;
  for (auto _ : state) benchmark::DoNotOptimize(clustered_approx(cluster, f_star, params));
}
BENCHMARK(BM_ClusteredApprox);

}  // namespace

BENCHMARK_MAIN();
