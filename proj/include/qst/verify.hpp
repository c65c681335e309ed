#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "qst/analytic.hpp"
#include "qst/spectral.hpp"

namespace qst {

/// A closed-form value that disagrees with the eigendecomposition beyond
/// tol::physics. For propagator entries the two values are moduli and
/// abs_error is the modulus of the complex difference.
struct Discrepancy {
  analytic::Family family = analytic::Family::Kn;
  std::size_t n = 0;
  double dE = 0.0;
  std::string quantity;
  double closed_form_value = 0.0;
  double oracle_value = 0.0;
  double abs_error = 0.0;
};

struct VerifyOptions {
  std::vector<analytic::Family> families{analytic::Family::Kn, analytic::Family::KnMinus};
  std::size_t n_min = 4;
  std::size_t n_max = 12;
  std::size_t random_times = 500;
  double t_max = 20.0;
  std::uint64_t seed = 1;
};

struct VerifyReport {
  std::vector<Discrepancy> discrepancies;
  std::size_t checks = 0;
};

/// Shift values checked for each size: 0, 1, 2n-6, 2n, 17.3.
std::vector<double> verification_shifts(std::size_t n);

/// Compares every closed form (I/O fidelity, spectrum, propagator entries,
/// PST schedule, maximum-fidelity claims) with the numeric path.
VerifyReport verify_analytic(const VerifyOptions& options, Parallelism par = {});

void write_discrepancy_csv(std::ostream& out, const std::vector<Discrepancy>& rows);

}  // namespace qst
