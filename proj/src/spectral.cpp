#include "qst/spectral.hpp"

#include <cmath>

#include <fmt/format.h>

#include "qst/error.hpp"
#include "qst/kernels.hpp"

namespace qst {

namespace {

void check_pair(const EigenSystem& es, Vertex i, Vertex j) {
  if (i >= es.size() || j >= es.size()) {
    throw Error(ErrorCode::Index, fmt::format("pair ({},{}) out of range for n={}", i, j, es.size()));
  }
}

void check_time(double t) {
  if (!std::isfinite(t)) throw Error(ErrorCode::NumericInput, "time must be finite");
}

}  // namespace

EigenSystem eigendecompose(const ShiftedHamiltonian& h) {
  if (!h.matrix().allFinite()) throw Error(ErrorCode::NumericInput, "Hamiltonian has non-finite entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NumericConsistency, "symmetric eigensolver did not converge");
  return EigenSystem(solver.eigenvalues(), solver.eigenvectors());
}

Eigen::MatrixXcd propagator(const EigenSystem& es, double t) {
  check_time(t);
  const Eigen::MatrixXd& v = es.eigenvectors();
  const Eigen::VectorXcd phases =
      es.eigenvalues().unaryExpr([t](double lambda) { return std::polar(1.0, -lambda * t); });
  return v.cast<std::complex<double>>() * phases.asDiagonal() * v.transpose().cast<std::complex<double>>();
}

std::complex<double> transfer_amplitude(const EigenSystem& es, Vertex i, Vertex j, double t) {
  check_pair(es, i, j);
  check_time(t);
  const Eigen::MatrixXd& v = es.eigenvectors();
  std::complex<double> amp = 0.0;
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    amp += v(static_cast<Eigen::Index>(i), k) * v(static_cast<Eigen::Index>(j), k) *
           std::polar(1.0, -es.eigenvalues()(k) * t);
  }
  return amp;
}

double checked_fidelity(double raw) {
  if (!(raw >= -tol::algebraic && raw <= 1.0 + tol::algebraic)) {
    throw Error(ErrorCode::NumericConsistency, fmt::format("fidelity {:.17g} outside [0,1]", raw));
  }
  return std::clamp(raw, 0.0, 1.0);
}

double fidelity(const EigenSystem& es, Vertex i, Vertex j, double t) {
  check_pair(es, i, j);
  check_time(t);
  return checked_fidelity(kernels::TransferWeights::from(es, i, j).raw_fidelity(t));
}

std::vector<double> uniform_grid(double tmax, std::size_t steps) {
  if (steps == 0) return {0.0};
  std::vector<double> grid(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) grid[k] = static_cast<double>(k) * tmax / static_cast<double>(steps);
  return grid;
}

std::vector<double> uniform_grid(double t0, double t1, std::size_t points) {
  if (points < 2) return {t0};
  std::vector<double> grid(points);
  const double span = t1 - t0;
  for (std::size_t k = 0; k < points; ++k) {
    grid[k] = t0 + span * static_cast<double>(k) / static_cast<double>(points - 1);
  }
  grid.back() = t1;
  return grid;
}

FidelityTrace fidelity_trace(const EigenSystem& es, Vertex i, Vertex j, std::span<const double> grid, Parallelism par) {
  check_pair(es, i, j);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    check_time(grid[k]);
    if (k > 0 && !(grid[k] > grid[k - 1])) throw Error(ErrorCode::NumericInput, "time grid must be strictly increasing");
  }
  FidelityTrace trace;
  trace.i = i;
  trace.j = j;
  trace.times.assign(grid.begin(), grid.end());
  trace.values.resize(grid.size());
  kernels::sample_fidelity(kernels::TransferWeights::from(es, i, j), grid, trace.values, par);
  kernels::finalize_fidelities(trace.values);
  return trace;
}

}  // namespace qst
