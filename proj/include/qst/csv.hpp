#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "qst/hamiltonian.hpp"
#include "qst/noise.hpp"
#include "qst/search.hpp"
#include "qst/spectral.hpp"

namespace qst {

/// Every real is written in scientific notation with 18 significant digits.
std::string format_real(double value);

void write_trace_csv(std::ostream& out, const FidelityTrace& trace);
void write_matrix_csv(std::ostream& out, const ShiftedHamiltonian& h);
void write_table_csv(std::ostream& out, const std::vector<TableCell>& cells);
void write_sweep_csv(std::ostream& out, const std::vector<SweepResult>& sweeps);

std::string_view to_string(NoiseMode mode) noexcept;
NoiseMode noise_mode_from_string(std::string_view name);

}  // namespace qst
