#include <cmath>

#include "qst/error.hpp"
#include "qst/kernels.hpp"

namespace qst::kernels {

TransferWeights TransferWeights::from(const EigenSystem& es, Vertex i, Vertex j) {
  if (i >= es.size() || j >= es.size()) throw Error(ErrorCode::Index, "transfer pair out of range");
  const Eigen::MatrixXd& v = es.eigenvectors();
  TransferWeights w;
  w.energies.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  w.weights.resize(es.size());
  for (std::size_t k = 0; k < es.size(); ++k) {
    const auto col = static_cast<Eigen::Index>(k);
    w.weights[k] = v(static_cast<Eigen::Index>(i), col) * v(static_cast<Eigen::Index>(j), col);
  }
  return w;
}

double TransferWeights::raw_fidelity(double t) const noexcept {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double phase = energies[k] * t;
    re += weights[k] * std::cos(phase);
    im -= weights[k] * std::sin(phase);
  }
  return re * re + im * im;
}

void finalize_fidelities(std::span<double> values) {
  for (double& v : values) v = checked_fidelity(v);
}

double disorder_sample(const DisorderBatch& b, std::uint64_t r) {
  const NoiseSpec spec{b.mode, b.variance, derive_seed(b.master_seed, b.grid_index, r)};
  const EigenSystem es = eigendecompose(apply_noise(*b.base, *b.graph, spec));
  return TransferWeights::from(es, b.i, b.j).raw_fidelity(b.t);
}

namespace serial {

void sample_fidelity(const TransferWeights& w, std::span<const double> times, std::span<double> out) {
  for (std::size_t k = 0; k < times.size(); ++k) out[k] = w.raw_fidelity(times[k]);
}

void disorder_fidelities(const DisorderBatch& batch, std::span<double> out) {
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = disorder_sample(batch, r);
}

}  // namespace serial

void sample_fidelity(const TransferWeights& w, std::span<const double> times, std::span<double> out, Parallelism par) {
  if (par.threads == 1) {
    serial::sample_fidelity(w, times, out);
  } else {
    omp::sample_fidelity(w, times, out, par.threads);
  }
}

void disorder_fidelities(const DisorderBatch& batch, std::span<double> out, Parallelism par) {
  if (par.threads == 1) {
    serial::disorder_fidelities(batch, out);
  } else {
    omp::disorder_fidelities(batch, out, par.threads);
  }
}

}  // namespace qst::kernels
