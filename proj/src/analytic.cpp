#include "qst/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qst/error.hpp"

namespace qst::analytic {

using std::numbers::pi;
using cplx = std::complex<double>;

std::string_view to_string(Family f) noexcept { return f == Family::Kn ? "kn" : "knm"; }

Family family_from_string(std::string_view name) {
  if (name == "kn") return Family::Kn;
  if (name == "knm") return Family::KnMinus;
  throw Error(ErrorCode::InvalidParameter, fmt::format("unknown family '{}'", name));
}

std::string_view to_string(EntryClass c) noexcept {
  switch (c) {
    case EntryClass::DiagIO: return "DiagIO";
    case EntryClass::DiagOther: return "DiagOther";
    case EntryClass::OffIOIO: return "OffIOIO";
    case EntryClass::OffIOOther: return "OffIOOther";
    case EntryClass::OffOtherOther: return "OffOtherOther";
  }
  return "?";
}

Graph family_graph(Family f, std::size_t n) { return f == Family::Kn ? complete(n) : complete_minus_edge(n, 0, n - 1); }

namespace {

void check_size(std::size_t n) {
  if (n < 4) throw Error(ErrorCode::UnsupportedSize, fmt::format("closed forms need n >= 4, got {}", n));
}

double checked_sqrt(double radicand, std::string_view what) {
  if (!(radicand >= 0.0)) throw Error(ErrorCode::Domain, fmt::format("{} radicand {} is negative", what, radicand));
  return std::sqrt(radicand);
}

cplx phase(double lambda, double t) { return std::polar(1.0, -lambda * t); }

}  // namespace

double alpha(std::size_t n, double dE) {
  const double nn = static_cast<double>(n);
  return checked_sqrt(4 * nn * nn - 4 * (nn - 4) * dE + dE * dE, "alpha");
}

double beta(std::size_t n, double dE) {
  const double nn = static_cast<double>(n);
  return checked_sqrt(4 * (nn * nn + 2 * nn - 7) - 4 * (nn - 3) * dE + dE * dE, "beta");
}

AnalyticParams params(Family f, std::size_t n, double dE) {
  check_size(n);
  if (!std::isfinite(dE)) throw Error(ErrorCode::Domain, "shift must be finite");
  return {f, n, dE, f == Family::Kn ? alpha(n, dE) : beta(n, dE)};
}

std::vector<double> AnalyticSpectrum::sorted() const {
  std::vector<double> all(lambda2_multiplicity, lambda2);
  all.push_back(lambda1);
  all.push_back(lambda34[0]);
  all.push_back(lambda34[1]);
  std::sort(all.begin(), all.end());
  return all;
}

AnalyticSpectrum spectrum(Family f, std::size_t n, double dE) {
  const auto p = params(f, n, dE);
  const double nn = static_cast<double>(n);
  AnalyticSpectrum s;
  s.lambda2 = -2.0;
  s.lambda2_multiplicity = n - 3;
  if (f == Family::Kn) {
    s.lambda1 = dE - 2;
    s.lambda34 = {(2 * (nn - 2) + dE + p.root) / 2, (2 * (nn - 2) + dE - p.root) / 2};
    s.omega = {(2 * (nn - 4) - dE + p.root) / (4 * (nn - 2)), (2 * (nn - 4) - dE - p.root) / (4 * (nn - 2))};
  } else {
    s.lambda1 = dE;
    s.lambda34 = {(2 * (nn - 3) + dE + p.root) / 2, (2 * (nn - 3) + dE - p.root) / 2};
    s.omega = {(2 * (nn - 3) - dE + p.root) / (4 * (nn - 2)), (2 * (nn - 3) - dE - p.root) / (4 * (nn - 2))};
  }
  return s;
}

double kn_fidelity(std::size_t n, double dE, double t) {
  const double a = params(Family::Kn, n, dE).root;
  const double m = static_cast<double>(n) - 4;
  const double nn = static_cast<double>(n);
  const double a2 = a * a;
  return (dE * dE + 3 * a2 - 4 * dE * m + 4 * m * m) / (8 * a2) +
         (8 + dE + a - 2 * nn) * (a + 2 * nn - 8 - dE) / (8 * a2) * std::cos(a * t) -
         (dE - 2 * m + a) / (4 * a) * std::cos(t * (2 * nn - dE + a) / 2) +
         (dE - 2 * m - a) / (4 * a) * std::cos(t * (2 * nn - dE - a) / 2);
}

double knm_fidelity(std::size_t n, double dE, double t) {
  const double b = params(Family::KnMinus, n, dE).root;
  const double m = static_cast<double>(n) - 3;
  const double nn = static_cast<double>(n);
  const double b2 = b * b;
  return (dE * dE + 3 * b2 - 4 * dE * m + 4 * m * m) / (8 * b2) +
         (6 + dE + b - 2 * nn) * (b + 2 * nn - 6 - dE) / (8 * b2) * std::cos(b * t) -
         (6 - 2 * nn + dE + b) / (4 * b) * std::cos(t * (2 * nn - 6 - dE + b) / 2) +
         (6 - 2 * nn + dE - b) / (4 * b) * std::cos(t * (2 * nn - 6 - dE - b) / 2);
}

double io_fidelity(Family f, std::size_t n, double dE, double t) {
  return f == Family::Kn ? kn_fidelity(n, dE, t) : knm_fidelity(n, dE, t);
}

double PstSchedule::time(std::size_t k) const noexcept { return (2 * pi + 4 * pi * static_cast<double>(k)) / root; }

PstSchedule pst_schedule(Family f, std::size_t n) {
  check_size(n);
  const double nn = static_cast<double>(n);
  const double dE = f == Family::Kn ? 2 * nn : 2 * nn - 6;
  return {f, n, dE, params(f, n, dE).root};
}

std::pair<Vertex, Vertex> representative_pair(EntryClass c, std::size_t n) {
  check_size(n);
  switch (c) {
    case EntryClass::DiagIO: return {0, 0};
    case EntryClass::DiagOther: return {1, 1};
    case EntryClass::OffIOIO: return {0, n - 1};
    case EntryClass::OffIOOther: return {0, 1};
    case EntryClass::OffOtherOther: return {1, 2};
  }
  return {0, 0};
}

cplx propagator_entry(Family f, std::size_t n, double dE, double t, EntryClass c) {
  const auto s = spectrum(f, n, dE);
  const double r = params(f, n, dE).root;
  const double nn = static_cast<double>(n);
  const cplx e1 = phase(s.lambda1, t);
  const cplx e2 = phase(s.lambda2, t);
  const cplx e3 = phase(s.lambda34[0], t);
  const cplx e4 = phase(s.lambda34[1], t);

  if (f == Family::Kn) {
    const double m = nn - 4;
    switch (c) {
      case EntryClass::DiagIO:
        return (r - 2 * nn + dE + 8) / (4 * r) * e3 + (r - 2 * nn - dE + 8) / (4 * r) * e4 + 0.5 * e1;
      case EntryClass::DiagOther:
        return (nn - 3) / (nn - 2) * e1 + (r - 2 * nn + dE + 8) / (2 * nn * r - 4 * r) * e3 +
               (r + 2 * nn - dE - 8) / (2 * nn * r - 4 * r) * e4;
      case EntryClass::OffIOIO:
        return (dE - 2 * m + r) / (4 * r) * e3 + (2 * m - dE + r) / (4 * r) * e4 - 0.5 * e1;
      case EntryClass::OffIOOther:
        return 2.0 * (e3 - e4) / r;
      case EntryClass::OffOtherOther:
        return (dE - 2 * m + r) / (2 * (nn - 2) * r) * e4 + (2 * m - dE + r) / (2 * (nn - 2) * r) * e3 -
               1.0 / ((nn - 2) * r) * e2;
    }
  }

  // K_n^-: two coefficients carry alpha where beta would be expected
  const double m = nn - 3;
  const double a = alpha(n, dE);
  switch (c) {
    case EntryClass::DiagIO:
      return (r - 2 * nn + dE + 6) / (4 * r) * e3 + (r - 2 * nn - dE + 6) / (4 * r) * e4 + 0.5 * e1;
    case EntryClass::DiagOther:
      return (nn - 3) / (nn - 2) * e1 + (r - 2 * nn + dE + 6) / (2 * nn * r - 4 * r) * e3 +
             (r + 2 * nn - dE - 6) / (2 * nn * r - 4 * r) * e4;
    case EntryClass::OffIOIO:
      return (dE - 2 * m + r) / (4 * r) * e3 + (2 * m - dE + a) / (4 * r) * e4 - 0.5 * e1;
    case EntryClass::OffIOOther:
      return 2.0 * (e3 - e4) / r;
    case EntryClass::OffOtherOther:
      return (dE - 2 * m + r) / (2 * (nn - 2) * r) * e4 + (2 * m - dE + a) / (2 * (nn - 2) * r) * e3 -
             1.0 / ((nn - 2) * r) * e2;
  }
  return {};
}

std::vector<MaxFidelityPrediction> max_fidelity_predictions(Family f, std::size_t n) {
  const auto sched = pst_schedule(f, n);
  const double r = sched.root;
  const double nn = static_cast<double>(n);
  const double kl_max = std::pow(r * (nn - 2) - 2, 2) / (4 * r * r * (nn - 2) * (nn - 2));

  std::vector<MaxFidelityPrediction> out{
      {"max_f_ii", EntryClass::DiagIO, sched.dE_opt, 1.0, 2 * pi / r, true},
      {"max_f_kk", EntryClass::DiagOther, sched.dE_opt, 1.0, 4 * pi / r, true},
      {"max_f_ij", EntryClass::OffIOIO, sched.dE_opt, 1.0, sched.time(0), true},
      {"max_f_ik", EntryClass::OffIOOther, sched.dE_opt, 16.0 / (r * r), sched.time(0), true},
      {"max_f_kl", EntryClass::OffOtherOther, sched.dE_opt, kl_max, 2 * pi / r, true},
  };
  if (f == Family::KnMinus) {
    // a second I/O claim for K_n^- uses an alpha-based time
    out.push_back({"max_f_ij_alpha_time", EntryClass::OffIOIO, sched.dE_opt, 1.0, 2 * pi / alpha(n, sched.dE_opt), true});
  }
  return out;
}

}  // namespace qst::analytic
