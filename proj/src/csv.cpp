#include "qst/csv.hpp"

#include <fmt/format.h>

#include "qst/error.hpp"

namespace qst {

std::string format_real(double value) { return fmt::format("{:.17e}", value); }

std::string_view to_string(NoiseMode mode) noexcept {
  return mode == NoiseMode::VertexFrequencies ? "vertex" : "edge";
}

NoiseMode noise_mode_from_string(std::string_view name) {
  if (name == "vertex") return NoiseMode::VertexFrequencies;
  if (name == "edge") return NoiseMode::EdgeCouplings;
  throw Error(ErrorCode::InvalidParameter, fmt::format("unknown noise mode '{}'", name));
}

void write_trace_csv(std::ostream& out, const FidelityTrace& trace) {
  out << "t,fidelity\n";
  for (std::size_t k = 0; k < trace.times.size(); ++k) {
    out << format_real(trace.times[k]) << ',' << format_real(trace.values[k]) << '\n';
  }
}

void write_matrix_csv(std::ostream& out, const ShiftedHamiltonian& h) {
  for (std::size_t r = 0; r < h.size(); ++r) {
    for (std::size_t c = 0; c < h.size(); ++c) {
      if (c) out << ',';
      out << format_real(h(r, c));
    }
    out << '\n';
  }
}

void write_table_csv(std::ostream& out, const std::vector<TableCell>& cells) {
  out << "dE,n,l,tStar,fMax,isPst,gridPoints,windowCap\n";
  for (const auto& c : cells) {
    out << format_real(c.dE) << ',' << c.n << ',' << (c.l ? std::to_string(*c.l) : std::string()) << ','
        << format_real(c.result.t_star) << ',' << format_real(c.result.f_max) << ',' << (c.result.is_pst ? 1 : 0)
        << ',' << c.result.grid_points << ',' << format_real(c.window_cap) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepResult>& sweeps) {
  out << "mode,shifted,sigma2,mean_fidelity,std_error,samples,t_eval\n";
  for (const auto& s : sweeps) {
    for (std::size_t k = 0; k < s.sigma2_grid.size(); ++k) {
      out << to_string(s.mode) << ',' << (s.shifted ? 1 : 0) << ',' << format_real(s.sigma2_grid[k]) << ','
          << format_real(s.mean_fidelity[k]) << ',' << format_real(s.std_error[k]) << ',' << s.samples << ','
          << format_real(s.t_eval) << '\n';
    }
  }
}

}  // namespace qst
