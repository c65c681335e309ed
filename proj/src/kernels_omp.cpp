#include <exception>

#include <omp.h>

#include "qst/kernels.hpp"

namespace qst::kernels::omp {

namespace {

int resolve(int threads) { return threads > 0 ? threads : omp_get_max_threads(); }

}  // namespace

void sample_fidelity(const TransferWeights& w, std::span<const double> times, std::span<double> out, int threads) {
  const auto count = static_cast<std::ptrdiff_t>(times.size());
#pragma omp parallel for schedule(static) num_threads(resolve(threads))
  for (std::ptrdiff_t k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = w.raw_fidelity(times[static_cast<std::size_t>(k)]);
}

void disorder_fidelities(const DisorderBatch& batch, std::span<double> out, int threads) {
  const auto count = static_cast<std::ptrdiff_t>(out.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16) num_threads(resolve(threads))
  for (std::ptrdiff_t r = 0; r < count; ++r) {
    try {
      out[static_cast<std::size_t>(r)] = disorder_sample(batch, static_cast<std::uint64_t>(r));
    } catch (...) {
#pragma omp critical(qst_disorder_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace qst::kernels::omp
