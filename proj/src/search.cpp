#include "qst/search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <fmt/format.h>

#include "qst/error.hpp"
#include "qst/hamiltonian.hpp"
#include "qst/kernels.hpp"

namespace qst {

namespace {

constexpr std::size_t kMaxGridPoints = 20'000'000;
constexpr double kTieTolerance = 1e-9;
constexpr double kRelativeTimeResolution = 1e-10;

struct Peak {
  double t = 0.0;
  double f = 0.0;
};

struct Scan {
  std::vector<double> times;
  std::vector<double> values;
  double spacing = 0.0;
  double slack = 0.0;  // bound on how far a true peak can sit above its best neighbouring sample
};

void check_window(TimeWindow w) {
  if (!std::isfinite(w.begin) || !std::isfinite(w.end) || !(w.begin < w.end)) {
    throw Error(ErrorCode::InvalidWindow, fmt::format("window [{}, {}] is empty", w.begin, w.end));
  }
}

Scan scan(const EigenSystem& es, const kernels::TransferWeights& w, TimeWindow window, std::size_t points,
          Parallelism par) {
  if (points < 2) throw Error(ErrorCode::InvalidParameter, "grid needs at least two points");
  if (points > kMaxGridPoints) {
    throw Error(ErrorCode::InvalidParameter, fmt::format("grid of {} points exceeds limit {}", points, kMaxGridPoints));
  }
  Scan s;
  s.times = uniform_grid(window.begin, window.end, points);
  s.values.resize(points);
  kernels::sample_fidelity(w, s.times, s.values, par);
  kernels::finalize_fidelities(s.values);
  s.spacing = (window.end - window.begin) / static_cast<double>(points - 1);
  // |f''| <= spread^2, and a peak lies within half a spacing of a sample
  const double spread = es.spectral_spread();
  s.slack = std::min(1.0, spread * spread * s.spacing * s.spacing / 8.0) + kTieTolerance;
  return s;
}

// Discrete local maxima; plateaus contribute their first sample only.
std::vector<std::size_t> grid_peaks(const Scan& s, double floor) {
  std::vector<std::size_t> out;
  const std::size_t last = s.values.size() - 1;
  for (std::size_t k = 0; k <= last; ++k) {
    const double v = s.values[k];
    if (v < floor) continue;
    if (k > 0 && !(v > s.values[k - 1])) continue;
    if (k < last && v < s.values[k + 1]) continue;
    out.push_back(k);
  }
  return out;
}

Peak refine(const kernels::TransferWeights& w, const Scan& s, std::size_t k, TimeWindow window) {
  const auto f = [&w](double t) { return checked_fidelity(w.raw_fidelity(t)); };
  double a = k > 0 ? s.times[k - 1] : s.times[k];
  double b = k + 1 < s.times.size() ? s.times[k + 1] : s.times[k];
  const double resolution = (window.end - window.begin) * kRelativeTimeResolution;

  Peak best{s.times[k], s.values[k]};
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int iter = 0; iter < 200 && (b - a) > resolution; ++iter) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  for (const Peak p : {Peak{x1, f1}, Peak{x2, f2}}) {
    if (p.f > best.f) best = p;
  }
  return best;
}

PstResult make_result(const Scan& s, Peak p, double threshold, TimeWindow window) {
  PstResult r;
  r.t_star = p.t;
  r.f_max = p.f;
  r.threshold = threshold;
  r.is_pst = p.f >= threshold;
  r.grid_resolution = s.spacing;
  r.grid_points = s.times.size();
  r.window = window;
  return r;
}

PstResult global_maximum(const kernels::TransferWeights& w, const Scan& s, double threshold, TimeWindow window) {
  const double best_sample = *std::max_element(s.values.begin(), s.values.end());
  std::vector<Peak> refined;
  for (std::size_t k : grid_peaks(s, best_sample - s.slack)) refined.push_back(refine(w, s, k, window));
  double best = 0.0;
  for (const Peak& p : refined) best = std::max(best, p.f);
  // refined peaks are in time order; earliest within the tie tolerance wins
  const auto winner = std::find_if(refined.begin(), refined.end(), [&](const Peak& p) { return p.f >= best - kTieTolerance; });
  return make_result(s, *winner, threshold, window);
}

void check_threshold(double threshold) {
  if (!std::isfinite(threshold)) throw Error(ErrorCode::InvalidParameter, "threshold must be finite");
}

}  // namespace

std::size_t resolved_grid_points(const EigenSystem& es, TimeWindow window, std::size_t minimum) {
  check_window(window);
  const double spread = es.spectral_spread();
  const double needed = std::ceil((window.end - window.begin) * spread * 8.0 / std::numbers::pi) + 1.0;
  if (needed > static_cast<double>(kMaxGridPoints)) {
    throw Error(ErrorCode::InvalidParameter, fmt::format("window needs {} grid points, limit is {}", needed, kMaxGridPoints));
  }
  return std::max(minimum, static_cast<std::size_t>(needed));
}

PstResult maximize_fidelity(const EigenSystem& es, Vertex i, Vertex j, TimeWindow window, std::size_t grid_points,
                            double pst_threshold, Parallelism par) {
  check_window(window);
  check_threshold(pst_threshold);
  const auto w = kernels::TransferWeights::from(es, i, j);
  const Scan s = scan(es, w, window, grid_points, par);
  return global_maximum(w, s, pst_threshold, window);
}

PstResult first_peak_above(const EigenSystem& es, Vertex i, Vertex j, TimeWindow window, std::size_t grid_points,
                           double threshold, Parallelism par) {
  check_window(window);
  check_threshold(threshold);
  const auto w = kernels::TransferWeights::from(es, i, j);
  const Scan s = scan(es, w, window, grid_points, par);
  for (std::size_t k : grid_peaks(s, threshold - s.slack)) {
    const Peak p = refine(w, s, k, window);
    if (p.f >= threshold) return make_result(s, p, threshold, window);
  }
  return global_maximum(w, s, threshold, window);
}

namespace {

PstResult transfer_time(const Graph& g, Vertex in, Vertex out, double dE, double threshold, double window_cap,
                        std::size_t grid_points, Parallelism par) {
  if (!(window_cap > 0.0)) throw Error(ErrorCode::InvalidWindow, "window cap must be positive");
  const EigenSystem es = eigendecompose(build(g, io_shift(in, out, dE)));
  const TimeWindow window{0.0, window_cap};
  const std::size_t points = grid_points ? grid_points : resolved_grid_points(es, window, kTableMinGridPoints);
  return first_peak_above(es, in, out, window, points, threshold, par);
}

}  // namespace

PstResult chain_transfer_time(std::size_t n, double dE, double pst_threshold, double window_cap,
                              std::size_t grid_points, Parallelism par) {
  if (n < 2) throw Error(ErrorCode::InvalidSize, "chain transfer needs n >= 2");
  return transfer_time(path(n), 0, n - 1, dE, pst_threshold, window_cap, grid_points, par);
}

PstResult theta_transfer_time(std::size_t l, std::size_t n, double dE, double pst_threshold, double window_cap,
                              std::size_t grid_points, Parallelism par) {
  const Graph g = theta(l, n);
  return transfer_time(g, 0, theta_antipode(l, n), dE, pst_threshold, window_cap, grid_points, par);
}

double estimate_transfer_time(const Graph& g, Vertex i, Vertex j, double chain_time) {
  return chain_time / static_cast<double>(count_geodesics(g, i, j).count);
}

std::optional<double> reference_chain_time(double dE, std::size_t n) {
  static const std::map<std::pair<int, std::size_t>, double> table{
      {{10, 2}, 0.7}, {{10, 3}, 5}, {{10, 4}, 19},  {{10, 5}, 99},
      {{20, 2}, 0.7}, {{20, 3}, 8}, {{20, 4}, 81},  {{20, 5}, 8010},
      {{30, 2}, 0.7}, {{30, 3}, 12}, {{30, 4}, 178}, {{30, 5}, 2665},
      {{40, 2}, 0.7}, {{40, 3}, 16}, {{40, 4}, 313}, {{40, 5}, 6260},
      {{50, 2}, 0.7}, {{50, 3}, 20}, {{50, 4}, 494}, {{50, 5}, 12294},
  };
  if (dE != std::round(dE)) return std::nullopt;
  const auto it = table.find({static_cast<int>(dE), n});
  return it == table.end() ? std::nullopt : std::optional<double>(it->second);
}

std::optional<double> reference_theta_time(std::size_t l, std::size_t n) {
  static const std::map<std::pair<std::size_t, std::size_t>, double> table{
      {{1, 3}, 5}, {{1, 4}, 19}, {{1, 5}, 99}, {{2, 3}, 3}, {{2, 4}, 11}, {{2, 5}, 62},
      {{3, 3}, 2}, {{3, 4}, 9},  {{3, 5}, 42}, {{4, 3}, 1}, {{4, 4}, 6},  {{4, 5}, 36},
  };
  const auto it = table.find({l, n});
  return it == table.end() ? std::nullopt : std::optional<double>(it->second);
}

namespace {

double cell_window(std::optional<double> cap, std::optional<double> reference, std::string_view cell) {
  if (cap) return *cap;
  if (reference) return kTableWindowFactor * *reference;
  throw Error(ErrorCode::InvalidWindow, fmt::format("cell {} has no reference time; pass a window cap", cell));
}

}  // namespace

std::vector<TableCell> chain_table(std::span<const double> shifts, std::span<const std::size_t> sizes,
                                   double pst_threshold, std::optional<double> window_cap, std::size_t grid_points,
                                   Parallelism par) {
  std::vector<TableCell> cells;
  for (double dE : shifts) {
    for (std::size_t n : sizes) {
      TableCell c;
      c.dE = dE;
      c.n = n;
      c.window_cap = cell_window(window_cap, reference_chain_time(dE, n), fmt::format("dE={} n={}", dE, n));
      c.result = chain_transfer_time(n, dE, pst_threshold, c.window_cap, grid_points, par);
      cells.push_back(c);
    }
  }
  return cells;
}

std::vector<TableCell> theta_table(std::span<const std::size_t> paths, std::span<const std::size_t> sizes, double dE,
                                   double pst_threshold, std::optional<double> window_cap, std::size_t grid_points,
                                   Parallelism par) {
  std::vector<TableCell> cells;
  for (std::size_t l : paths) {
    for (std::size_t n : sizes) {
      TableCell c;
      c.dE = dE;
      c.n = n;
      c.l = l;
      const auto reference = dE == 10.0 ? reference_theta_time(l, n) : std::nullopt;
      c.window_cap = cell_window(window_cap, reference, fmt::format("l={} n={}", l, n));
      c.result = theta_transfer_time(l, n, dE, pst_threshold, c.window_cap, grid_points, par);
      cells.push_back(c);
    }
  }
  return cells;
}

}  // namespace qst
