#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qst/graph.hpp"
#include "qst/spectral.hpp"

namespace qst {

struct TimeWindow {
  double begin = 0.0;
  double end = 0.0;
};

struct PstResult {
  double t_star = 0.0;
  double f_max = 0.0;
  bool is_pst = false;
  double threshold = 0.0;
  double grid_resolution = 0.0;
  std::size_t grid_points = 0;
  TimeWindow window;
};

/// Dense grid scan of f(i,j;t) over the window followed by golden-section
/// refinement of every grid peak that could beat the best sample. Returns
/// the earliest peak within 1e-9 of the largest refined value.
PstResult maximize_fidelity(const EigenSystem& es, Vertex i, Vertex j, TimeWindow window, std::size_t grid_points,
                            double pst_threshold, Parallelism par = {});

/// Earliest refined peak reaching `threshold`; falls back to
/// maximize_fidelity when no peak in the window does.
PstResult first_peak_above(const EigenSystem& es, Vertex i, Vertex j, TimeWindow window, std::size_t grid_points,
                           double threshold, Parallelism par = {});

/// Grid size resolving the fastest beat of the spectrum (8 samples per
/// pi/spread), never below `minimum`.
std::size_t resolved_grid_points(const EigenSystem& es, TimeWindow window, std::size_t minimum);

inline constexpr double kTablePstThreshold = 1.0 - 1e-4;
inline constexpr double kCertificateThreshold = 1.0 - 1e-9;
inline constexpr double kTableWindowFactor = 1.5;
inline constexpr std::size_t kTableMinGridPoints = 100000;

/// path(n) with shift dE on both ends; I/O = (0, n-1). grid_points = 0
/// selects resolved_grid_points(..., kTableMinGridPoints).
PstResult chain_transfer_time(std::size_t n, double dE, double pst_threshold, double window_cap,
                              std::size_t grid_points = 0, Parallelism par = {});

/// theta(l, n) between its antipodal vertices, shift dE on both.
PstResult theta_transfer_time(std::size_t l, std::size_t n, double dE, double pst_threshold, double window_cap,
                              std::size_t grid_points = 0, Parallelism par = {});

/// Order-of-magnitude estimate: chain time divided by the number of geodesics.
double estimate_transfer_time(const Graph& g, Vertex i, Vertex j, double chain_time);

/// Reference transfer times for the chain table (rows dE = 10..50, n = 2..5)
/// and the multi-path table (dE = 10, l = 1..4, n = 3..5).
std::optional<double> reference_chain_time(double dE, std::size_t n);
std::optional<double> reference_theta_time(std::size_t l, std::size_t n);

struct TableCell {
  double dE = 0.0;
  std::size_t n = 0;
  std::optional<std::size_t> l;  // empty for chain cells
  double window_cap = 0.0;
  PstResult result;
};

/// Without an explicit window cap each cell uses kTableWindowFactor times
/// its reference value; cells with no reference then raise InvalidWindow.
std::vector<TableCell> chain_table(std::span<const double> shifts, std::span<const std::size_t> sizes,
                                   double pst_threshold, std::optional<double> window_cap,
                                   std::size_t grid_points = 0, Parallelism par = {});
std::vector<TableCell> theta_table(std::span<const std::size_t> paths, std::span<const std::size_t> sizes, double dE,
                                   double pst_threshold, std::optional<double> window_cap,
                                   std::size_t grid_points = 0, Parallelism par = {});

}  // namespace qst
