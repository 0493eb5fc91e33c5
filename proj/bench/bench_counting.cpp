// Serial reference vs. OpenMP kernels on synthetic graphs.
//
//   ./bench_counting --benchmark_filter=Exact

#include <benchmark/benchmark.h>

#include "tbc/counting.hpp"
#include "tbc/graph.hpp"
#include "tbc/sampling.hpp"

namespace {

const tbc::TemporalBipartiteGraph& bench_graph(std::size_t m) {
  static std::size_t cached_m = 0;
  static tbc::TemporalBipartiteGraph graph;
  if (cached_m != m) {
    graph = tbc::generate_synthetic(1000, 1000, m, 1'000'000, 42);
    cached_m = m;
  }
  return graph;
}

constexpr tbc::Timestamp kTau = 20'000;

void BM_ExactSerial(benchmark::State& state) {
  const auto& g = bench_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tbc::exact_count_serial(g, kTau));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_edges()));
}

void BM_ExactParallel(benchmark::State& state) {
  const auto& g = bench_graph(static_cast<std::size_t>(state.range(0)));
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(tbc::exact_count_parallel(g, kTau, threads));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_edges()));
}

void BM_EstimateES(benchmark::State& state) {
  const auto& g = bench_graph(200'000);
  tbc::SamplingConfig cfg;
  cfg.p = 0.1;
  cfg.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tbc::estimate(g, kTau, cfg));
    ++cfg.seed;
  }
}

void BM_EstimateIS(benchmark::State& state) {
  const auto& g = bench_graph(200'000);
  tbc::SamplingConfig cfg;
  cfg.method = tbc::SamplingMethod::kInterval;
  cfg.s = 200;
  cfg.threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tbc::estimate(g, kTau, cfg));
    ++cfg.seed;
  }
}

}  // namespace

BENCHMARK(BM_ExactSerial)->Arg(50'000)->Arg(200'000)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExactParallel)
    ->ArgsProduct({{50'000, 200'000}, {1, 2, 4, 0}})
    ->UseRealTime()
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EstimateES)->Arg(1)->Arg(0)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EstimateIS)->Arg(1)->Arg(0)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
