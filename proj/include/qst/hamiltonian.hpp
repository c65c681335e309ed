#pragma once

#include <cstdint>
#include <map>

#include <Eigen/Dense>

#include "qst/graph.hpp"

namespace qst {

/// Per-vertex on-site energy shifts; unlisted vertices are unshifted.
using ShiftSpec = std::map<Vertex, double>;

/// Shift `value` on both transfer endpoints.
ShiftSpec io_shift(Vertex i, Vertex j, double value);

/// Real symmetric single-excitation XY Hamiltonian. Symmetry is exact
/// (bit-identical mirrored entries) for every instance.
class ShiftedHamiltonian {
 public:
  /// Throws NumericInput unless `m` is square and exactly symmetric.
  static ShiftedHamiltonian from_matrix(Eigen::MatrixXd m);

  std::size_t size() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  double operator()(std::size_t i, std::size_t j) const { return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }
  const Eigen::MatrixXd& matrix() const noexcept { return m_; }

  friend bool operator==(const ShiftedHamiltonian& a, const ShiftedHamiltonian& b) {
    return a.m_.rows() == b.m_.rows() && a.m_.cols() == b.m_.cols() && a.m_ == b.m_;
  }

 private:
  explicit ShiftedHamiltonian(Eigen::MatrixXd m) : m_(std::move(m)) {}
  Eigen::MatrixXd m_;
};

/// Diagonal carries the shift of each vertex, edges carry coupling 2.
ShiftedHamiltonian build(const Graph& g, const ShiftSpec& shifts);

enum class NoiseMode { VertexFrequencies, EdgeCouplings };

struct NoiseSpec {
  NoiseMode mode = NoiseMode::VertexFrequencies;
  double variance = 0.0;
  std::uint64_t seed = 0;
};

/// Adds one Gaussian disorder realization. Vertex mode perturbs every
/// diagonal entry; edge mode perturbs each existing edge with a single
/// symmetric draw. Draw order: vertices ascending, or edges in sorted order.
ShiftedHamiltonian apply_noise(const ShiftedHamiltonian& h, const Graph& g, const NoiseSpec& spec);

/// Mixes a master seed with two indices into an independent stream seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) noexcept;

inline constexpr std::size_t kFullSpaceMaxVertices = 12;

/// Builds the XY Hamiltonian on the full 2^n space from Pauli tensor
/// products, adds shift * number operator per vertex, and returns its
/// single-excitation block. Used to validate `build`.
ShiftedHamiltonian full_space_oracle(const Graph& g, const ShiftSpec& shifts);

}  // namespace qst
