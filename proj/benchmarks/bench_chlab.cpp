#include <chlab/constructions.hpp>
#include <chlab/evolution.hpp>
#include <chlab/littlewood_paley.hpp>

#include <benchmark/benchmark.h>

#include <cmath>

using namespace chlab;

namespace {

Field smooth_field(std::size_t n) {
  const GridSpec g(64.0, n);
  return Field::from_function(g, [](double x) { return std::exp(-x * x / 50.0) * std::sin(3.0 * x); });
}

void BM_RoundTrip(benchmark::State& state) {
  const Field u = smooth_field(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(to_field(to_spectrum(u)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RoundTrip)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity(benchmark::oNLogN);

void BM_BesovNorm(benchmark::State& state) {
  const Field u = smooth_field(static_cast<std::size_t>(state.range(0)));
  const BesovParams params{2.0, 2.0, 2.0};
  littlewood_paley(u.grid());
  for (auto _ : state) benchmark::DoNotOptimize(besov_norm(u, params));
}
BENCHMARK(BM_BesovNorm)->Arg(1 << 12)->Arg(1 << 16);

void BM_BesovNormLp(benchmark::State& state) {
  const Field u = smooth_field(1 << 16);
  const BesovParams params{2.0, 3.0, 2.0};
  for (auto _ : state) benchmark::DoNotOptimize(besov_norm(u, params));
}
BENCHMARK(BM_BesovNormLp);

void BM_RhsCH(benchmark::State& state) {
  const GridSpec g(64.0, static_cast<std::size_t>(state.range(0)));
  const Field u = make_set(4, {2.0, 2.0, 2.0}, g).u0;
  for (auto _ : state) benchmark::DoNotOptimize(rhs_ch(u));
}
BENCHMARK(BM_RhsCH)->Arg(1 << 12)->Arg(1 << 16);

void BM_RK4Steps(benchmark::State& state) {
  const GridSpec g(64.0, 1 << 16);
  const Field u = make_set(8, {2.0, 2.0, 2.0}, g).u0;
  SolverConfig cfg;
  cfg.dt = 0.005;
  cfg.final_time = 0.05;  // ten steps
  for (auto _ : state) benchmark::DoNotOptimize(solve(u, cfg, Equation::camassa_holm));
}
BENCHMARK(BM_RK4Steps)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
