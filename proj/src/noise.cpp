#include "qst/noise.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "qst/analytic.hpp"
#include "qst/error.hpp"
#include "qst/kernels.hpp"

namespace qst {

std::vector<double> linear_sigma2_grid(double start, double stop, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {start};
  return uniform_grid(start, stop, count);
}

SweepResult average_fidelity_sweep(const SweepRequest& request, Parallelism par) {
  if (request.graph == nullptr) throw Error(ErrorCode::InvalidParameter, "sweep needs a graph");
  if (request.samples < 1) throw Error(ErrorCode::InvalidParameter, "sweep needs at least one sample");
  if (!(request.t_eval > 0.0) || !std::isfinite(request.t_eval)) {
    throw Error(ErrorCode::InvalidParameter, "evaluation time must be positive and finite");
  }
  for (double s2 : request.sigma2_grid) {
    if (!(s2 >= 0.0) || !std::isfinite(s2)) {
      throw Error(ErrorCode::InvalidVariance, fmt::format("variance must be finite and >= 0, got {}", s2));
    }
  }

  const ShiftedHamiltonian base = build(*request.graph, request.shifts);
  SweepResult out;
  out.sigma2_grid = request.sigma2_grid;
  out.samples = request.samples;
  out.mode = request.mode;
  out.shifted = !request.shifts.empty();
  out.t_eval = request.t_eval;
  out.baseline = fidelity(eigendecompose(base), request.i, request.j, request.t_eval);

  std::vector<double> draws(request.samples);
  for (std::size_t k = 0; k < request.sigma2_grid.size(); ++k) {
    const double variance = request.sigma2_grid[k];
    if (variance == 0.0) {
      // every realization equals the noiseless Hamiltonian
      out.mean_fidelity.push_back(out.baseline);
      out.std_error.push_back(0.0);
      continue;
    }
    kernels::DisorderBatch batch;
    batch.base = &base;
    batch.graph = request.graph;
    batch.mode = request.mode;
    batch.variance = variance;
    batch.master_seed = request.seed;
    batch.grid_index = k;
    batch.i = request.i;
    batch.j = request.j;
    batch.t = request.t_eval;
    kernels::disorder_fidelities(batch, draws, par);
    kernels::finalize_fidelities(draws);

    double sum = 0.0;
    for (double f : draws) sum += f;
    const double mean = sum / static_cast<double>(draws.size());
    double ss = 0.0;
    for (double f : draws) ss += (f - mean) * (f - mean);
    const double count = static_cast<double>(draws.size());
    const double se = draws.size() > 1 ? std::sqrt(ss / (count - 1.0) / count) : 0.0;
    out.mean_fidelity.push_back(std::clamp(mean, 0.0, 1.0));
    out.std_error.push_back(se);
  }
  return out;
}

std::pair<SweepResult, SweepResult> shifted_vs_unshifted_comparison(const Graph& g, Vertex i, Vertex j, NoiseMode mode,
                                                                    std::span<const double> sigma2_grid,
                                                                    std::size_t samples, std::uint64_t seed,
                                                                    double unshifted_window, Parallelism par) {
  const std::size_t n = g.vertex_count();
  if (n < 4 || i == j || i >= n || j >= n) {
    throw Error(ErrorCode::UnsupportedGraph, "comparison needs a complete-graph family with n >= 4 and distinct I/O");
  }
  analytic::Family family;
  if (g == complete(n)) {
    family = analytic::Family::Kn;
  } else if (g == complete_minus_edge(n, i, j)) {
    family = analytic::Family::KnMinus;
  } else {
    throw Error(ErrorCode::UnsupportedGraph, "graph is neither K_n nor K_n minus the I/O edge");
  }

  const auto schedule = analytic::pst_schedule(family, n);
  SweepRequest shifted;
  shifted.graph = &g;
  shifted.shifts = io_shift(i, j, schedule.dE_opt);
  shifted.i = i;
  shifted.j = j;
  shifted.mode = mode;
  shifted.sigma2_grid.assign(sigma2_grid.begin(), sigma2_grid.end());
  shifted.samples = samples;
  shifted.t_eval = schedule.time(0);
  shifted.seed = seed;

  SweepRequest unshifted = shifted;
  unshifted.shifts.clear();
  const EigenSystem es = eigendecompose(build(g, {}));
  unshifted.t_eval = maximize_fidelity(es, i, j, {0.0, unshifted_window}, kTableMinGridPoints, kCertificateThreshold, par).t_star;

  return {average_fidelity_sweep(shifted, par), average_fidelity_sweep(unshifted, par)};
}

}  // namespace qst
