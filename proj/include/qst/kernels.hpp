#pragma once

// Data-parallel inner loops. Each kernel exists twice: a plain serial
// reference and an OpenMP version. Both must produce bit-identical output;
// tests compare them and bench/ times them.

#include <cstdint>
#include <span>
#include <vector>

#include "qst/graph.hpp"
#include "qst/hamiltonian.hpp"
#include "qst/spectral.hpp"

namespace qst::kernels {

/// The i->j transfer amplitude is sum_k weight_k exp(-i energy_k t), with
/// weight_k = V(i,k) V(j,k). Precomputing the pair keeps the per-sample
/// cost at O(n).
struct TransferWeights {
  std::vector<double> energies;
  std::vector<double> weights;

  static TransferWeights from(const EigenSystem& es, Vertex i, Vertex j);
  double raw_fidelity(double t) const noexcept;
};

/// One fixed-time disorder batch: `samples` noisy copies of `base`, seeds
/// derive_seed(master_seed, grid_index, r) for r = 0..samples-1.
struct DisorderBatch {
  const ShiftedHamiltonian* base = nullptr;
  const Graph* graph = nullptr;
  NoiseMode mode = NoiseMode::VertexFrequencies;
  double variance = 0.0;
  std::uint64_t master_seed = 0;
  std::uint64_t grid_index = 0;
  Vertex i = 0;
  Vertex j = 0;
  double t = 0.0;
};

/// Raw fidelity of realization r of the batch.
double disorder_sample(const DisorderBatch& batch, std::uint64_t r);

// Kernels write raw |amplitude|^2; callers run checked_fidelity on the result.
namespace serial {
void sample_fidelity(const TransferWeights& w, std::span<const double> times, std::span<double> out);
void disorder_fidelities(const DisorderBatch& batch, std::span<double> out);
}  // namespace serial

namespace omp {
void sample_fidelity(const TransferWeights& w, std::span<const double> times, std::span<double> out, int threads = 0);
void disorder_fidelities(const DisorderBatch& batch, std::span<double> out, int threads = 0);
}  // namespace omp

/// Dispatch on Parallelism: threads == 1 runs the serial reference.
void sample_fidelity(const TransferWeights& w, std::span<const double> times, std::span<double> out, Parallelism par);
void disorder_fidelities(const DisorderBatch& batch, std::span<double> out, Parallelism par);

/// Applies checked_fidelity to every entry in place.
void finalize_fidelities(std::span<double> values);

}  // namespace qst::kernels
