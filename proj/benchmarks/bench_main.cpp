#include <benchmark/benchmark.h>

#include "infoflow/ctml.hpp"
#include "infoflow/estimation.hpp"
#include "infoflow/flow_network.hpp"
#include "infoflow/lattice.hpp"
#include "infoflow/significance.hpp"
#include "infoflow/topology.hpp"

using namespace infoflow;

namespace {

void BM_Marginalize(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SystemLayout layout(n, 3);
  const JointTable system = random_system(layout, 7);
  const AxisSet keep{0, 1, n};
  for (auto _ : state) benchmark::DoNotOptimize(marginalize(system, keep));
}
BENCHMARK(BM_Marginalize)->Arg(2)->Arg(3)->Arg(4);

SymbolSeries ctml_symbols(std::size_t steps) {
  CtmlConfig config;
  config.topology = DependencyGraph(3, {{0, 1}, {1, 2}});
  config.steps = steps;
  return symbolize_median(ctml_generate(config)).symbols;
}

void BM_TransferStatistic(benchmark::State& state) {
  const SymbolSeries symbols = ctml_symbols(100000);
  const auto mode = state.range(0) ? Conditioning::kMultivariate : Conditioning::kPairwise;
  const TransferStatistic statistic(symbols, 0, 1, 3, 1, mode);
  std::size_t offset = 1;
  for (auto _ : state) benchmark::DoNotOptimize(statistic.shifted(offset++ * 997));
}
BENCHMARK(BM_TransferStatistic)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_EstimateNetwork(benchmark::State& state) {
  const SymbolSeries symbols = ctml_symbols(100000);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_network(symbols, 2, 1, Conditioning::kMultivariate));
}
BENCHMARK(BM_EstimateNetwork)->Unit(benchmark::kMillisecond);

void BM_EnumerateTopologies(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_topologies(n));
}
BENCHMARK(BM_EnumerateTopologies)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
