#include <complex>
#include <vector>

#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>
#include <fmt/format.h>

#include "qst/error.hpp"
#include "qst/hamiltonian.hpp"

namespace qst {

namespace {

using cplx = std::complex<double>;
using SpMat = Eigen::SparseMatrix<cplx>;

enum class Pauli { I, X, Y, Z };

SpMat pauli(Pauli p) {
  Eigen::Matrix2cd m;
  const cplx i1(0.0, 1.0);
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -i1, i1, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m.sparseView();
}

// Tensor product of per-qubit factors; qubit 0 is the leftmost factor.
SpMat pauli_string(const std::vector<Pauli>& factors) {
  SpMat out = pauli(factors.front());
  for (std::size_t q = 1; q < factors.size(); ++q) {
    SpMat next = Eigen::kroneckerProduct(out, pauli(factors[q])).eval();
    out = std::move(next);
  }
  return out;
}

SpMat two_site(std::size_t n, std::size_t a, Pauli pa, std::size_t b, Pauli pb) {
  std::vector<Pauli> f(n, Pauli::I);
  f[a] = pa;
  f[b] = pb;
  return pauli_string(f);
}

}  // namespace

ShiftedHamiltonian full_space_oracle(const Graph& g, const ShiftSpec& shifts) {
  const std::size_t n = g.vertex_count();
  if (n > kFullSpaceMaxVertices) {
    throw Error(ErrorCode::SizeLimit, fmt::format("full-space oracle limited to n <= {}, got {}", kFullSpaceMaxVertices, n));
  }
  for (const auto& [v, value] : shifts) {
    if (v >= n) throw Error(ErrorCode::Index, fmt::format("shift on vertex {} outside [0,{})", v, n));
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  SpMat h(dim, dim);

  // (1/2) sum over ordered pairs i != j of A_ij (X_i X_j + Y_i Y_j)
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !g.adjacent(i, j)) continue;
      h += 0.5 * (two_site(n, i, Pauli::X, j, Pauli::X) + two_site(n, i, Pauli::Y, j, Pauli::Y));
    }
  }
  // shift * (I - Z_v)/2, the occupation of site v
  for (const auto& [v, value] : shifts) {
    std::vector<Pauli> z(n, Pauli::I);
    z[v] = Pauli::Z;
    std::vector<Pauli> id(n, Pauli::I);
    h += (0.5 * value) * (pauli_string(id) - pauli_string(z));
  }

  // |j> has the excitation on qubit j, i.e. bit (n-1-j) of the basis index.
  std::vector<Eigen::Index> basis(n);
  for (std::size_t j = 0; j < n; ++j) basis[j] = Eigen::Index{1} << (n - 1 - j);

  h.makeCompressed();
  Eigen::MatrixXd block(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const cplx value = h.coeff(basis[r], basis[c]);
      if (std::abs(value.imag()) > 1e-12) {
        throw Error(ErrorCode::NumericConsistency, "single-excitation block has an imaginary entry");
      }
      block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = value.real();
    }
  }
  // the block is Hermitian up to rounding; mirror it to make symmetry exact
  for (Eigen::Index r = 0; r < block.rows(); ++r) {
    for (Eigen::Index c = r + 1; c < block.cols(); ++c) {
      if (std::abs(block(r, c) - block(c, r)) > 1e-12) {
        throw Error(ErrorCode::NumericConsistency, "single-excitation block is not symmetric");
      }
      block(c, r) = block(r, c);
    }
  }
  return ShiftedHamiltonian::from_matrix(std::move(block));
}

}  // namespace qst
