#pragma once

// Closed forms for the complete graph K_n and the complete graph with the
// I/O edge removed (K_n^-), both with shift dE on the I/O pair. The I/O
// pair is (0, n-1); every formula is kept in its reference form so a
// mismatch against the numeric path points at the formula, not the code.

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "qst/graph.hpp"

namespace qst::analytic {

enum class Family { Kn, KnMinus };

std::string_view to_string(Family f) noexcept;
Family family_from_string(std::string_view name);

/// Graph for the family with I/O pair (0, n-1).
Graph family_graph(Family f, std::size_t n);

struct AnalyticParams {
  Family family = Family::Kn;
  std::size_t n = 4;
  double dE = 0.0;
  double root = 0.0;  // alpha for Kn, beta for KnMinus
};

/// Throws UnsupportedSize for n < 4 and Domain for a negative radicand.
AnalyticParams params(Family f, std::size_t n, double dE);

/// alpha evaluated at (n, dE) regardless of family.
double alpha(std::size_t n, double dE);
double beta(std::size_t n, double dE);

struct AnalyticSpectrum {
  double lambda1 = 0.0;
  double lambda2 = -2.0;
  std::size_t lambda2_multiplicity = 0;
  std::array<double, 2> lambda34{};  // (+root, -root)
  std::array<double, 2> omega{};     // eigenvector component on non-I/O sites

  /// All n eigenvalues in ascending order.
  std::vector<double> sorted() const;
};

AnalyticSpectrum spectrum(Family f, std::size_t n, double dE);

/// I/O fidelity, the four-term cosine expansion for K_n.
double kn_fidelity(std::size_t n, double dE, double t);
/// Same for K_n^-.
double knm_fidelity(std::size_t n, double dE, double t);
double io_fidelity(Family f, std::size_t n, double dE, double t);

struct PstSchedule {
  Family family = Family::Kn;
  std::size_t n = 4;
  double dE_opt = 0.0;
  double root = 0.0;

  /// (2 pi + 4 pi k) / root.
  double time(std::size_t k) const noexcept;
};

PstSchedule pst_schedule(Family f, std::size_t n);

enum class EntryClass { DiagIO, DiagOther, OffIOIO, OffIOOther, OffOtherOther };

std::string_view to_string(EntryClass c) noexcept;
inline constexpr std::array<EntryClass, 5> kEntryClasses{EntryClass::DiagIO, EntryClass::DiagOther, EntryClass::OffIOIO,
                                                         EntryClass::OffIOOther, EntryClass::OffOtherOther};

/// A vertex pair of the class with I/O = (0, n-1): (0,0), (1,1), (0,n-1), (0,1), (1,2).
std::pair<Vertex, Vertex> representative_pair(EntryClass c, std::size_t n);

/// Reference closed form of the propagator entry for the vertex class.
std::complex<double> propagator_entry(Family f, std::size_t n, double dE, double t, EntryClass c);

/// One reference maximum-fidelity claim, to be checked numerically.
struct MaxFidelityPrediction {
  std::string quantity;
  EntryClass entry = EntryClass::OffIOIO;
  double dE = 0.0;
  double predicted_max = 0.0;
  double time = 0.0;             // first nontrivial time the claim names
  bool verify_against_oracle = true;
};

std::vector<MaxFidelityPrediction> max_fidelity_predictions(Family f, std::size_t n);

}  // namespace qst::analytic
