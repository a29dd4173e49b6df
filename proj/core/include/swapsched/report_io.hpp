#ifndef SWAPSCHED_REPORT_IO_HPP
#define SWAPSCHED_REPORT_IO_HPP

// Canonical report files: JSON with sorted keys, one key per line (so the
// elapsed time sits alone on its line), reals with 9 significant digits and
// no exponent. Serialising a parsed report reproduces the same bytes.

#include <swapsched/offload_sim.hpp>
#include <swapsched/solvers.hpp>

#include <string>
#include <string_view>

namespace swapsched {

// 9 significant digits, never an exponent, integral values without a point.
std::string format_real(double v);

std::string save_report(const SolveReport& report);
std::string save_report(const SimMetrics& metrics);

// Throw ParseError on malformed or mismatching documents.
SolveReport parse_solve_report(std::string_view text);
SimMetrics parse_sim_metrics(std::string_view text);

} // namespace swapsched

#endif
