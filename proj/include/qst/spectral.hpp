#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qst/graph.hpp"
#include "qst/hamiltonian.hpp"

namespace qst {

/// Tolerance ladder shared by the numeric checks.
namespace tol {
inline constexpr double algebraic = 1e-12;
inline constexpr double decomposition = 1e-10;
inline constexpr double physics = 1e-9;
}  // namespace tol

/// Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a
/// ShiftedHamiltonian. Immutable; safe to share across threads.
class EigenSystem {
 public:
  EigenSystem(Eigen::VectorXd values, Eigen::MatrixXd vectors) : values_(std::move(values)), vectors_(std::move(vectors)) {}

  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }
  const Eigen::VectorXd& eigenvalues() const noexcept { return values_; }
  const Eigen::MatrixXd& eigenvectors() const noexcept { return vectors_; }
  double spectral_spread() const noexcept { return values_.size() ? values_(values_.size() - 1) - values_(0) : 0.0; }

 private:
  Eigen::VectorXd values_;
  Eigen::MatrixXd vectors_;
};

EigenSystem eigendecompose(const ShiftedHamiltonian& h);

/// U(t) = V diag(exp(-i lambda t)) V^T.
Eigen::MatrixXcd propagator(const EigenSystem& es, double t);

/// <i|U(t)|j>.
std::complex<double> transfer_amplitude(const EigenSystem& es, Vertex i, Vertex j, double t);

/// |<i|U(t)|j>|^2. Values within 1e-12 of [0,1] are clamped; anything
/// further out raises NumericConsistency.
double fidelity(const EigenSystem& es, Vertex i, Vertex j, double t);

/// Clamp check applied to every raw |amplitude|^2.
double checked_fidelity(double raw);

/// Worker count for the data-parallel kernels. 1 selects the serial
/// reference path, 0 means all available threads.
struct Parallelism {
  int threads = 0;
};

struct FidelityTrace {
  std::string graph;  // free-form descriptor of the source graph
  Vertex i = 0;
  Vertex j = 0;
  ShiftSpec shifts;
  std::vector<double> times;
  std::vector<double> values;
};

/// Times k*tmax/steps for k = 0..steps.
std::vector<double> uniform_grid(double tmax, std::size_t steps);
std::vector<double> uniform_grid(double t0, double t1, std::size_t points);

FidelityTrace fidelity_trace(const EigenSystem& es, Vertex i, Vertex j, std::span<const double> grid,
                             Parallelism par = {});

}  // namespace qst
