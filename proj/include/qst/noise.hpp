#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qst/graph.hpp"
#include "qst/hamiltonian.hpp"
#include "qst/search.hpp"
#include "qst/spectral.hpp"

namespace qst {

struct SweepResult {
  std::vector<double> sigma2_grid;
  std::vector<double> mean_fidelity;
  std::vector<double> std_error;
  std::size_t samples = 0;
  NoiseMode mode = NoiseMode::VertexFrequencies;
  bool shifted = false;
  double t_eval = 0.0;
  double baseline = 0.0;  // noiseless fidelity at t_eval
};

struct SweepRequest {
  const Graph* graph = nullptr;
  ShiftSpec shifts;
  Vertex i = 0;
  Vertex j = 0;
  NoiseMode mode = NoiseMode::VertexFrequencies;
  std::vector<double> sigma2_grid;
  std::size_t samples = 2000;
  double t_eval = 0.0;
  std::uint64_t seed = 0;
};

/// Mean fidelity and its standard error at a fixed time, per variance.
/// Realization r of grid point k uses seed derive_seed(seed, k, r), so the
/// result does not depend on the thread count.
SweepResult average_fidelity_sweep(const SweepRequest& request, Parallelism par = {});

inline constexpr std::size_t kDefaultSamples = 2000;
inline constexpr double kDefaultUnshiftedWindow = 10.0;

/// `count` evenly spaced variances on [start, stop].
std::vector<double> linear_sigma2_grid(double start, double stop, std::size_t count);

/// Sweeps the complete graph (or complete graph minus the I/O edge) twice:
/// with the optimal I/O shift at its first PST time, and unshifted at the
/// unshifted curve's best time inside [0, unshifted_window].
std::pair<SweepResult, SweepResult> shifted_vs_unshifted_comparison(
    const Graph& g, Vertex i, Vertex j, NoiseMode mode, std::span<const double> sigma2_grid, std::size_t samples,
    std::uint64_t seed, double unshifted_window = kDefaultUnshiftedWindow, Parallelism par = {});

}  // namespace qst
