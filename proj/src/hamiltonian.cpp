#include "qst/hamiltonian.hpp"

#include <cmath>
#include <random>

#include <fmt/format.h>

#include "qst/error.hpp"

namespace qst {

ShiftSpec io_shift(Vertex i, Vertex j, double value) {
  ShiftSpec s;
  s[i] = value;
  s[j] = value;
  return s;
}

ShiftedHamiltonian ShiftedHamiltonian::from_matrix(Eigen::MatrixXd m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NumericInput, "Hamiltonian must be square");
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = r + 1; c < m.cols(); ++c)
      if (m(r, c) != m(c, r)) throw Error(ErrorCode::NumericInput, fmt::format("entry ({},{}) breaks symmetry", r, c));
  return ShiftedHamiltonian(std::move(m));
}

ShiftedHamiltonian build(const Graph& g, const ShiftSpec& shifts) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [v, value] : shifts) {
    if (v >= g.vertex_count()) throw Error(ErrorCode::Index, fmt::format("shift on vertex {} outside [0,{})", v, n));
    m(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v)) = value;
  }
  for (const auto& e : g.edges()) {
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    m(u, v) = 2.0;
    m(v, u) = 2.0;
  }
  return ShiftedHamiltonian::from_matrix(std::move(m));
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) noexcept {
  // splitmix64 finalizer applied to a running combination
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(master) ^ a) ^ b);
}

ShiftedHamiltonian apply_noise(const ShiftedHamiltonian& h, const Graph& g, const NoiseSpec& spec) {
  if (!(spec.variance >= 0.0) || !std::isfinite(spec.variance)) {
    throw Error(ErrorCode::InvalidVariance, fmt::format("variance must be finite and >= 0, got {}", spec.variance));
  }
  if (h.size() != g.vertex_count()) {
    throw Error(ErrorCode::InvalidParameter, "Hamiltonian and graph sizes differ");
  }
  Eigen::MatrixXd m = h.matrix();
  if (spec.variance == 0.0) return ShiftedHamiltonian::from_matrix(std::move(m));

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> xi(0.0, std::sqrt(spec.variance));
  switch (spec.mode) {
    case NoiseMode::VertexFrequencies:
      for (Eigen::Index v = 0; v < m.rows(); ++v) m(v, v) += xi(rng);
      break;
    case NoiseMode::EdgeCouplings:
      for (const auto& e : g.edges()) {
        const auto u = static_cast<Eigen::Index>(e.u);
        const auto v = static_cast<Eigen::Index>(e.v);
        const double value = m(u, v) + xi(rng);
        m(u, v) = value;
        m(v, u) = value;
      }
      break;
  }
  return ShiftedHamiltonian::from_matrix(std::move(m));
}

}  // namespace qst
