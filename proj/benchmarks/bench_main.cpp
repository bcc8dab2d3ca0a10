#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include <gptlab/gptlab.hpp>

using namespace gptlab;

static void BM_SolveLp(benchmark::State& state) {
  const auto vars = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  LinearProgram lp;
  lp.num_vars = vars;
  lp.objective.resize(vars);
  for (double& c : lp.objective) c = unif(rng);
  for (std::size_t k = 0; k < 2 * vars; ++k) {
    Vec row(vars);
    for (double& a : row) a = unif(rng);
    lp.add_le(std::move(row), 1.0);
  }
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp(lp));
}
BENCHMARK(BM_SolveLp)->Arg(8)->Arg(32)->Arg(96);

static void BM_CompatibilityDisc(benchmark::State& state) {
  const auto disc = make_disc();
  const auto [f, g] = mu_pair(disc, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(are_compatible(f, g));
}
BENCHMARK(BM_CompatibilityDisc);

static void BM_DegreeOfIncompatibilitySquare(benchmark::State& state) {
  const auto sq = make_polygon(4);
  const auto f = binary_ideal(sq, 0), g = binary_ideal(sq, 1);
  for (auto _ : state) benchmark::DoNotOptimize(degree_of_incompatibility(f, g));
}
BENCHMARK(BM_DegreeOfIncompatibilitySquare);

static void BM_SegmentScan(benchmark::State& state) {
  DimensionOptions opt;
  opt.grid = static_cast<int>(state.range(0));
  opt.jobs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(scan_segments(0.8, opt));
}
BENCHMARK(BM_SegmentScan)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_LandauPollakGamma(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(landau_pollak_gamma(n, n / 3));
}
BENCHMARK(BM_LandauPollakGamma)->Arg(6)->Arg(24);

static void BM_RandomJoint(benchmark::State& state) {
  const auto t = make_polygon(static_cast<int>(state.range(0)));
  const auto f = binary_ideal(t, 1), g = binary_ideal(t, 0);
  std::mt19937_64 rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(random_joint(f, g, rng));
}
BENCHMARK(BM_RandomJoint)->Arg(5)->Arg(12);

static void BM_WitnessState(benchmark::State& state) {
  const auto t = make_polygon(12);
  const auto f = binary_ideal(t, 1), g = binary_ideal(t, 0);
  std::mt19937_64 rng(3);
  const auto j = random_joint(f, g, rng);
  for (auto _ : state) benchmark::DoNotOptimize(theorem_witness_state(j, f, g, 0.2, 0.3));
}
BENCHMARK(BM_WitnessState);

static void BM_ConsistencyCheck(benchmark::State& state) {
  const auto t = make_polygon(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(consistency_check(t));
}
BENCHMARK(BM_ConsistencyCheck)->Arg(5)->Arg(6)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
