// Serial reference vs OpenMP kernels on the three hot paths: exact series
// convolution, exhaustive enumeration histograms, and multi-chain sampling.

#include <benchmark/benchmark.h>

#include "polylim/enumerate.hpp"
#include "polylim/mc.hpp"
#include "polylim/series.hpp"

using namespace polylim;

namespace {

void bm_series_mul(benchmark::State& state, Exec exec) {
  const SeriesPoly g = solve_qfe(Model::StaircaseDiagonal, 1, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    SeriesPoly p = series_mul(g, g, exec);
    benchmark::DoNotOptimize(p.term_count());
  }
}

void bm_solve_qfe(benchmark::State& state, Exec exec) {
  for (auto _ : state) {
    SeriesPoly g = solve_qfe(Model::StaircaseDiagonal, 1, static_cast<int>(state.range(0)), exec);
    benchmark::DoNotOptimize(g.term_count());
  }
}

void bm_walk_histogram(benchmark::State& state, Exec exec) {
  for (auto _ : state) {
    MomentHistogram h = walk_histogram(Model::Bernoulli, static_cast<int>(state.range(0)), 2, exec);
    benchmark::DoNotOptimize(h.by_grade.size());
  }
}

void bm_sap_totals(benchmark::State& state, Exec exec) {
  for (auto _ : state) {
    SapLayerTotals t = sap_layer_totals(static_cast<int>(state.range(0)), 2,
                                        LayerFamily::Diagonal, exec);
    benchmark::DoNotOptimize(t.polygons);
  }
}

void bm_mc_run(benchmark::State& state, Exec exec) {
  McConfig cfg;
  cfg.n0 = static_cast<int>(state.range(0));
  cfg.samples = 2000;
  cfg.seed = 7;
  for (auto _ : state) {
    McResult r = mc_run(cfg, exec);
    benchmark::DoNotOptimize(r.moments.size());
  }
}

}  // namespace

BENCHMARK_CAPTURE(bm_series_mul, serial, Exec::Serial)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_series_mul, openmp, Exec::Parallel)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_solve_qfe, serial, Exec::Serial)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_solve_qfe, openmp, Exec::Parallel)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_walk_histogram, serial, Exec::Serial)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_walk_histogram, openmp, Exec::Parallel)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_sap_totals, serial, Exec::Serial)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_sap_totals, openmp, Exec::Parallel)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_mc_run, serial, Exec::Serial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_mc_run, openmp, Exec::Parallel)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
