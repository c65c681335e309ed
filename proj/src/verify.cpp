#include "qst/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "qst/hamiltonian.hpp"
#include "qst/search.hpp"

namespace qst {

using analytic::EntryClass;
using analytic::Family;

std::vector<double> verification_shifts(std::size_t n) {
  const double nn = static_cast<double>(n);
  return {0.0, 1.0, 2 * nn - 6, 2 * nn, 17.3};
}

namespace {

EigenSystem family_system(Family f, std::size_t n, double dE) {
  return eigendecompose(build(analytic::family_graph(f, n), io_shift(0, n - 1, dE)));
}

struct Worst {
  double error = -1.0;
  double closed_form = 0.0;
  double oracle = 0.0;

  void offer(double p, double o, double e) {
    if (e > error) *this = {e, p, o};
  }
};

class Recorder {
 public:
  explicit Recorder(VerifyReport& report) : report_(report) {}

  void check(Family f, std::size_t n, double dE, std::string quantity, const Worst& w) {
    ++report_.checks;
    if (!(w.error <= tol::physics)) {
      report_.discrepancies.push_back({f, n, dE, std::move(quantity), w.closed_form, w.oracle, w.error});
    }
  }

 private:
  VerifyReport& report_;
};

}  // namespace

VerifyReport verify_analytic(const VerifyOptions& options, Parallelism par) {
  VerifyReport report;
  Recorder rec(report);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> time_dist(0.0, options.t_max);

  for (Family f : options.families) {
    for (std::size_t n = std::max<std::size_t>(options.n_min, 4); n <= options.n_max; ++n) {
      for (double dE : verification_shifts(n)) {
        const EigenSystem es = family_system(f, n, dE);
        std::vector<double> times(options.random_times);
        for (double& t : times) t = time_dist(rng);

        Worst io;
        for (double t : times) {
          const double closed_form = analytic::io_fidelity(f, n, dE, t);
          const double oracle = fidelity(es, 0, n - 1, t);
          io.offer(closed_form, oracle, std::abs(closed_form - oracle));
        }
        rec.check(f, n, dE, "io_fidelity", io);

        const auto predicted = analytic::spectrum(f, n, dE).sorted();
        Worst spec;
        for (std::size_t k = 0; k < predicted.size(); ++k) {
          const double numeric = es.eigenvalues()(static_cast<Eigen::Index>(k));
          spec.offer(predicted[k], numeric, std::abs(predicted[k] - numeric));
        }
        rec.check(f, n, dE, "spectrum", spec);

        for (EntryClass c : analytic::kEntryClasses) {
          const auto [a, b] = analytic::representative_pair(c, n);
          Worst entry;
          for (double t : times) {
            const auto closed_form = analytic::propagator_entry(f, n, dE, t, c);
            const auto oracle = transfer_amplitude(es, a, b, t);
            entry.offer(std::abs(closed_form), std::abs(oracle), std::abs(closed_form - oracle));
          }
          rec.check(f, n, dE, fmt::format("U_{}", analytic::to_string(c)), entry);
        }
      }

      const auto schedule = analytic::pst_schedule(f, n);
      const EigenSystem opt = family_system(f, n, schedule.dE_opt);
      for (std::size_t k = 0; k <= 3; ++k) {
        Worst w;
        const double oracle = fidelity(opt, 0, n - 1, schedule.time(k));
        w.offer(1.0, oracle, std::max(0.0, 1.0 - oracle));
        rec.check(f, n, schedule.dE_opt, fmt::format("pst_time_k{}", k), w);
      }

      const TimeWindow window{0.0, 16 * std::numbers::pi / schedule.root};
      for (const auto& p : analytic::max_fidelity_predictions(f, n)) {
        const auto [a, b] = analytic::representative_pair(p.entry, n);
        Worst at_time;
        const double value = fidelity(opt, a, b, p.time);
        at_time.offer(p.predicted_max, value, std::abs(p.predicted_max - value));
        rec.check(f, n, p.dE, p.quantity + "@time", at_time);

        Worst max;
        const auto found = maximize_fidelity(opt, a, b, window, 20000, kCertificateThreshold, par);
        max.offer(p.predicted_max, found.f_max, std::abs(p.predicted_max - found.f_max));
        rec.check(f, n, p.dE, p.quantity, max);
      }
    }
  }
  return report;
}

void write_discrepancy_csv(std::ostream& out, const std::vector<Discrepancy>& rows) {
  out << "family,n,dE,quantity,paper_value,oracle_value,abs_error\n";
  for (const auto& r : rows) {
    out << fmt::format("{},{},{:.17e},{},{:.17e},{:.17e},{:.17e}\n", analytic::to_string(r.family), r.n, r.dE,
                       r.quantity, r.closed_form_value, r.oracle_value, r.abs_error);
  }
}

}  // namespace qst
