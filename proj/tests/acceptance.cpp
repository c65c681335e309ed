// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any hard criterion fails. Soft findings (noise-enhanced
// transfer not found) and every reference-vs-computed mismatch go to
// acceptance_discrepancies.csv in the working directory.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "oracles.hpp"
#include "qst/analytic.hpp"
#include "qst/hamiltonian.hpp"
#include "qst/noise.hpp"
#include "qst/search.hpp"
#include "qst/spectral.hpp"

namespace {

using namespace qst;
using analytic::Family;
using std::numbers::pi;

// Tolerances, pinned here rather than derived at runtime.
constexpr double kReductionTol = 1e-12;
constexpr double kAnalyticTol = 1e-9;
constexpr double kCertificateTol = 1e-9;
constexpr double kNoPstBound = 0.999;
constexpr double kUnshiftedKnmFidelity = 0.999;
constexpr double kUnshiftedKnmTime = 5.0;
constexpr double kUnshiftedKnmTimeTol = 0.5;
constexpr double kTableRelTol = 0.02;
constexpr double kTableRoundedTol = 1.0;
constexpr double kTwoSiteTol = 1e-6;
constexpr double kSignificance = 3.0;
constexpr double kInfraTol = 1e-10;
constexpr std::size_t kNoiseSamples = 2000;
constexpr std::uint64_t kNoiseSeed = 20240601;

struct Row {
  std::string criterion, item;
  double reference, computed;
  std::string note;
};

std::vector<Row> discrepancies;
int hard_failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail, double seconds) {
  fmt::print("[{}] criterion {}: {} ({}; {:.1f} s)\n", pass ? "PASS" : "FAIL", criterion, what, detail, seconds);
  std::fflush(stdout);
  if (!pass) ++hard_failures;
}

double elapsed(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

double combined(double a, double b) { return std::sqrt(a * a + b * b); }

// ---- 1 ----
void full_space_reduction() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> shift(-25.0, 25.0);
  double worst = 0.0;
  std::size_t cases = 0;
  for (std::size_t n = 2; n <= 8; ++n) {
    std::vector<Graph> graphs{complete(n), path(n), oracle::random_graph(n, 0.5, rng)};
    if (n >= 3) graphs.push_back(complete_minus_edge(n, 0, n - 1));
    for (std::size_t l = 2; l <= 4; ++l)
      for (std::size_t len = 3; 2 + (len - 2) * l <= n; ++len)
        if (2 + (len - 2) * l == n) graphs.push_back(theta(l, len));
    for (const Graph& g : graphs) {
      for (int rep = 0; rep < 3; ++rep) {
        ShiftSpec s;
        for (Vertex v = 0; v < n; ++v)
          if (rng() % 2) s[v] = shift(rng);
        worst = std::max(worst, oracle::max_abs(full_space_oracle(g, s).matrix() - build(g, s).matrix()));
        ++cases;
      }
    }
  }
  report(1, worst <= kReductionTol, "full-space Hamiltonian reduces to diag(shifts) + 2A",
         fmt::format("{} cases, max entry error {:.2e} <= {:.0e}", cases, worst, kReductionTol), elapsed(start));
}

// ---- 2 ----
void analytic_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> time(0.0, 20.0);
  double worst = 0.0;
  for (Family f : {Family::Kn, Family::KnMinus}) {
    for (std::size_t n = 4; n <= 12; ++n) {
      const Graph g = analytic::family_graph(f, n);
      const double nn = static_cast<double>(n);
      for (double dE : {0.0, 1.0, 2 * nn - 6, 2 * nn, 17.3}) {
        const auto es = eigendecompose(build(g, io_shift(0, n - 1, dE)));
        for (int s = 0; s < 500; ++s) {
          const double t = time(rng);
          worst = std::max(worst, std::abs(analytic::io_fidelity(f, n, dE, t) - fidelity(es, 0, n - 1, t)));
        }
      }
    }
  }
  report(2, worst <= kAnalyticTol, "closed-form I/O fidelity equals the eigendecomposition",
         fmt::format("max |difference| {:.2e} <= {:.0e}", worst, kAnalyticTol), elapsed(start));
}

// ---- 3 ----
void pst_certificates() {
  const auto start = std::chrono::steady_clock::now();
  double lowest = 1.0;
  std::string where;
  for (Family f : {Family::Kn, Family::KnMinus}) {
    for (std::size_t n = 4; n <= 12; ++n) {
      const auto sched = analytic::pst_schedule(f, n);
      const auto es = eigendecompose(build(analytic::family_graph(f, n), io_shift(0, n - 1, sched.dE_opt)));
      for (std::size_t k = 0; k <= 2; ++k) {
        const double fid = fidelity(es, 0, n - 1, sched.time(k));
        if (fid < lowest) {
          lowest = fid;
          where = fmt::format("{} n={} k={}", analytic::to_string(f), n, k);
        }
      }
    }
  }
  report(3, lowest >= 1 - kCertificateTol, "fidelity 1 at the optimal shift and schedule times",
         fmt::format("min fidelity 1-{:.2e} at {}", 1 - lowest, where), elapsed(start));
}

// ---- 4, 5 ----
void unshifted_complete_graphs() {
  auto start = std::chrono::steady_clock::now();
  const auto k5 = eigendecompose(build(complete(5), {}));
  const auto r4 = maximize_fidelity(k5, 0, 4, {0.0, 10.0}, 100000, kCertificateThreshold);
  report(4, r4.f_max < kNoPstBound, "unshifted K5 never transfers perfectly on [0,10]",
         fmt::format("max fidelity {:.6f} at t={:.4f}, bound < {}", r4.f_max, r4.t_star, kNoPstBound), elapsed(start));

  start = std::chrono::steady_clock::now();
  const auto k5m = eigendecompose(build(complete_minus_edge(5, 0, 4), {}));
  const auto r5 = maximize_fidelity(k5m, 0, 4, {0.0, 8.0}, 100000, kCertificateThreshold);
  const bool pass = r5.f_max >= kUnshiftedKnmFidelity && std::abs(r5.t_star - kUnshiftedKnmTime) <= kUnshiftedKnmTimeTol;
  report(5, pass, "unshifted K5 minus the I/O edge reaches fidelity >= 0.999 near t=5",
         fmt::format("max fidelity {:.6f} at t={:.4f}; need >= {} within {}+-{}", r5.f_max, r5.t_star,
                     kUnshiftedKnmFidelity, kUnshiftedKnmTime, kUnshiftedKnmTimeTol),
         elapsed(start));
  if (!pass) discrepancies.push_back({"5", "K5- unshifted max fidelity", 1.0, r5.f_max, fmt::format("at t={}", r5.t_star)});
}

// ---- 6, 7 ----
bool table_match(double computed, double reference) {
  return std::abs(computed - reference) <= kTableRelTol * reference ||
         std::abs(std::round(computed) - reference) <= kTableRoundedTol;
}

std::string cell_name(const TableCell& c) {
  return c.l ? fmt::format("l={} n={}", *c.l, c.n) : fmt::format("dE={} n={}", c.dE, c.n);
}

void chain_table_check() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<double> shifts{10, 20, 30, 40, 50};
  const std::vector<std::size_t> sizes{2, 3, 4, 5};
  const auto cells = chain_table(shifts, sizes, kTablePstThreshold, std::nullopt);
  std::vector<std::string> bad;
  for (const auto& c : cells) {
    const double ref = *reference_chain_time(c.dE, c.n);
    if (c.n == 2) {
      // two sites: f = sin^2(2t) for any equal end shifts, so the time is pi/4
      if (std::abs(c.result.t_star - pi / 4) > kTwoSiteTol) bad.push_back(cell_name(c));
      discrepancies.push_back({"6", cell_name(c), ref, c.result.t_star, "two-site transfer time is pi/4"});
      continue;
    }
    fmt::print("    {:<12} reference {:>7}  computed {:>11.4f}  f={:.6f}\n", cell_name(c), ref, c.result.t_star,
               c.result.f_max);
    if (!table_match(c.result.t_star, ref)) {
      bad.push_back(cell_name(c));
      discrepancies.push_back({"6", cell_name(c), ref, c.result.t_star, fmt::format("f={:.6f}", c.result.f_max)});
    }
  }
  report(6, bad.empty(), "chain transfer times match the reference table",
         bad.empty() ? fmt::format("{} cells", cells.size())
                     : fmt::format("{} of {} cells off: {}", bad.size(), cells.size(), fmt::join(bad, ", ")),
         elapsed(start));
}

void theta_table_check() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::size_t> paths{1, 2, 3, 4};
  const std::vector<std::size_t> sizes{3, 4, 5};
  const auto cells = theta_table(paths, sizes, 10.0, kTablePstThreshold, std::nullopt);
  std::vector<std::string> bad;
  for (const auto& c : cells) {
    const double ref = *reference_theta_time(*c.l, c.n);
    fmt::print("    {:<12} reference {:>7}  computed {:>11.4f}  f={:.6f}\n", cell_name(c), ref, c.result.t_star,
               c.result.f_max);
    if (!table_match(c.result.t_star, ref)) {
      bad.push_back(cell_name(c));
      discrepancies.push_back({"7", cell_name(c), ref, c.result.t_star, fmt::format("f={:.6f}", c.result.f_max)});
    }
  }
  for (std::size_t n : sizes) {
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t l : paths) {
      for (const auto& c : cells) {
        if (c.n != n || *c.l != l) continue;
        if (!(c.result.t_star < previous)) bad.push_back(fmt::format("monotone n={} l={}", n, l));
        previous = c.result.t_star;
      }
    }
  }
  report(7, bad.empty(), "multi-path transfer times match the reference table and fall with l",
         bad.empty() ? fmt::format("{} cells, monotone in l", cells.size())
                     : fmt::format("{} problems: {}", bad.size(), fmt::join(bad, ", ")),
         elapsed(start));
}

// ---- 8 ----
void noise_orderings() {
  const auto start = std::chrono::steady_clock::now();
  const auto grid = linear_sigma2_grid(0.0, 2.0, 21);
  std::vector<std::string> problems;

  struct Run {
    std::string name;
    SweepResult shifted, unshifted;
  };
  std::vector<Run> runs;
  for (Family f : {Family::Kn, Family::KnMinus}) {
    const Graph g = analytic::family_graph(f, 5);
    for (auto mode : {NoiseMode::VertexFrequencies, NoiseMode::EdgeCouplings}) {
      auto [s, u] = shifted_vs_unshifted_comparison(g, 0, 4, mode, grid, kNoiseSamples, kNoiseSeed);
      runs.push_back({fmt::format("{}/{}", analytic::to_string(f), mode == NoiseMode::VertexFrequencies ? "vertex" : "edge"),
                      std::move(s), std::move(u)});
    }
  }

  // (a) optimally shifted runs decay
  for (const auto& r : runs) {
    const auto& m = r.shifted.mean_fidelity;
    const auto& se = r.shifted.std_error;
    for (std::size_t k = 1; k < m.size(); ++k)
      if (m[k] > m[k - 1] + kSignificance * combined(se[k], se[k - 1]))
        problems.push_back(fmt::format("{} rises at sigma2={}", r.name, grid[k]));
    if (!(m.back() < m.front() - kSignificance * combined(se.back(), se.front())))
      problems.push_back(fmt::format("{} not lower at sigma2=2", r.name));
    fmt::print("    shifted {:<11} mean fidelity {:.4f} -> {:.4f} (se {:.4f})\n", r.name, m.front(), m.back(), se.back());
  }

  // (b) coupling disorder hurts more than frequency disorder for shifted K5
  const auto& vertex = runs[0].shifted;
  const auto& edge = runs[1].shifted;
  std::size_t worse_at = grid.size();
  for (std::size_t k = 0; k < grid.size() && worse_at == grid.size(); ++k)
    if (vertex.mean_fidelity[k] - edge.mean_fidelity[k] > kSignificance * combined(vertex.std_error[k], edge.std_error[k]))
      worse_at = k;
  if (worse_at == grid.size()) problems.push_back("edge noise never significantly below vertex noise for shifted K5");

  const bool hard = problems.empty();
  report(8, hard, "shifted fidelity decays under disorder; coupling disorder is worse",
         hard ? fmt::format("edge below vertex from sigma2={}", grid[worse_at])
              : fmt::format("{}", fmt::join(problems, "; ")),
         elapsed(start));

  // (c) soft: some unshifted configuration gains from noise
  std::string found;
  for (const auto& r : runs) {
    const auto& u = r.unshifted;
    for (std::size_t k = 1; k < grid.size() && found.empty(); ++k) {
      if (u.mean_fidelity[k] - u.baseline > kSignificance * u.std_error[k]) {
        found = fmt::format("unshifted {} at t={:.4f}: {:.4f} at sigma2={} vs baseline {:.4f}", r.name, u.t_eval,
                            u.mean_fidelity[k], grid[k], u.baseline);
      }
    }
  }
  if (found.empty()) {
    fmt::print("[SOFT-FAIL] criterion 8c: no noise-enhanced unshifted transfer on sigma2 in [0,2] (21 points)\n");
    discrepancies.push_back({"8c", "noise-enhanced transfer", 1.0, 0.0, "scanned sigma2 0..2, 21 points, 4 configurations"});
  } else {
    fmt::print("[PASS] criterion 8c: noise can raise unshifted fidelity ({})\n", found);
  }
}

// ---- 9 ----
void infrastructure() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> time(0.0, 100.0);
  std::uniform_real_distribution<double> shift(-20.0, 20.0);
  double unitarity = 0, conservation = 0, phase = 0;
  bool identical = true;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 20;
    const Graph g = oracle::random_graph(n, 0.3, rng);
    ShiftSpec s;
    for (Vertex v = 0; v < n; ++v)
      if (rng() % 2) s[v] = shift(rng);
    const auto h = build(g, s);
    const auto es = eigendecompose(h);
    Eigen::MatrixXd moved = h.matrix();
    moved.diagonal().array() += shift(rng);
    const auto es_moved = eigendecompose(ShiftedHamiltonian::from_matrix(moved));
    const double t = time(rng);
    const Eigen::MatrixXcd u = propagator(es, t);
    unitarity = std::max(unitarity, oracle::max_abs(u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)));
    for (Vertex i = 0; i < n; ++i) {
      double total = 0;
      for (Vertex j = 0; j < n; ++j) {
        const double fid = fidelity(es, i, j, t);
        total += fid;
        phase = std::max(phase, std::abs(fid - fidelity(es_moved, i, j, t)));
      }
      conservation = std::max(conservation, std::abs(total - 1));
    }
    if (n >= 2 && trial % 10 == 0) {
      SweepRequest req{&g, s, 0, n - 1, trial % 20 ? NoiseMode::EdgeCouplings : NoiseMode::VertexFrequencies,
                       {0.0, 0.5, 1.5}, 64, t, rng()};
      const auto a = average_fidelity_sweep(req, Parallelism{1});
      const auto b = average_fidelity_sweep(req, Parallelism{0});
      identical = identical && a.mean_fidelity == b.mean_fidelity && a.std_error == b.std_error;
    }
  }
  const bool pass = unitarity <= kInfraTol && conservation <= kInfraTol && phase <= kInfraTol && identical;
  report(9, pass, "unitarity, conservation, phase invariance, reproducible sweeps",
         fmt::format("|U'U-I| {:.1e}, |sum f - 1| {:.1e}, phase {:.1e}, reruns {}", unitarity, conservation, phase,
                     identical ? "identical" : "differ"),
         elapsed(start));
}

}  // namespace

int main() {
  full_space_reduction();
  analytic_equivalence();
  pst_certificates();
  unshifted_complete_graphs();
  chain_table_check();
  theta_table_check();
  noise_orderings();
  infrastructure();

  std::ofstream csv("acceptance_discrepancies.csv");
  csv << "criterion,item,reference,computed,note\n";
  for (const auto& d : discrepancies)
    csv << fmt::format("{},{},{:.17e},{:.17e},{}\n", d.criterion, d.item, d.reference, d.computed, d.note);
  fmt::print("{} hard failure(s); {} discrepancy row(s) in acceptance_discrepancies.csv\n", hard_failures,
             discrepancies.size());
  return hard_failures == 0 ? 0 : 1;
}
