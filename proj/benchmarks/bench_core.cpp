#include <benchmark/benchmark.h>

#include <gendir/abscissa.hpp>
#include <gendir/norms.hpp>
#include <gendir/series.hpp>

namespace {

gendir::DirichletSeries zeta(std::size_t N) {
  return {gendir::make_log_frequency(), std::vector<gendir::Complex>(N, 1.0)};
}

void BM_Evaluate(benchmark::State& state) {
  const auto d = zeta(static_cast<std::size_t>(state.range(0)));
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gendir::evaluate(d, {0.5, t}));
    t += 0.37;
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Evaluate)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_HardyNormTimeAverage(benchmark::State& state) {
  const auto d = zeta(static_cast<std::size_t>(state.range(0)));
  gendir::NormConfig cfg;
  cfg.T_max = 1000.0;
  for (auto _ : state) benchmark::DoNotOptimize(gendir::hardy_norm(d, cfg).value);
}
BENCHMARK(BM_HardyNormTimeAverage)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_SupOnLine(benchmark::State& state) {
  const auto d = zeta(static_cast<std::size_t>(state.range(0)));
  gendir::SupConfig cfg;
  cfg.t_range = 1000.0;
  for (auto _ : state) benchmark::DoNotOptimize(gendir::sup_on_line(d, 0.0, cfg).value);
}
BENCHMARK(BM_SupOnLine)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_SigmaC(benchmark::State& state) {
  const auto fam = gendir::alternating_family(gendir::make_log_frequency());
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gendir::sigma_c_estimate(fam, 1.0, n).value);
}
BENCHMARK(BM_SigmaC)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
