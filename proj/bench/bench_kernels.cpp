// Serial reference vs OpenMP kernels. Arg = problem size (grid points or
// disorder samples); the OpenMP runs use every available thread.

#include <benchmark/benchmark.h>

#include "qst/kernels.hpp"

namespace {

using namespace qst;

struct ChainSetup {
  ShiftedHamiltonian h = build(path(5), io_shift(0, 4, 50));
  kernels::TransferWeights w = kernels::TransferWeights::from(eigendecompose(h), 0, 4);
};

void BM_SampleSerial(benchmark::State& state) {
  const ChainSetup s;
  const auto grid = uniform_grid(0.0, 1000.0, static_cast<std::size_t>(state.range(0)));
  std::vector<double> out(grid.size());
  for (auto _ : state) {
    kernels::serial::sample_fidelity(s.w, grid, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SampleOmp(benchmark::State& state) {
  const ChainSetup s;
  const auto grid = uniform_grid(0.0, 1000.0, static_cast<std::size_t>(state.range(0)));
  std::vector<double> out(grid.size());
  for (auto _ : state) {
    kernels::omp::sample_fidelity(s.w, grid, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

kernels::DisorderBatch k5_batch(const Graph& g, const ShiftedHamiltonian& h) {
  return {&h, &g, NoiseMode::EdgeCouplings, 1.0, 7, 0, 0, 4, 0.4967294132898051};
}

void BM_DisorderSerial(benchmark::State& state) {
  const Graph g = complete(5);
  const auto h = build(g, io_shift(0, 4, 10));
  const auto batch = k5_batch(g, h);
  std::vector<double> out(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    kernels::serial::disorder_fidelities(batch, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DisorderOmp(benchmark::State& state) {
  const Graph g = complete(5);
  const auto h = build(g, io_shift(0, 4, 10));
  const auto batch = k5_batch(g, h);
  std::vector<double> out(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    kernels::omp::disorder_fidelities(batch, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_SampleSerial)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_SampleOmp)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_DisorderSerial)->Arg(2000)->Arg(20000);
BENCHMARK(BM_DisorderOmp)->Arg(2000)->Arg(20000);

BENCHMARK_MAIN();
