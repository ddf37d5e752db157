#pragma once

#include <string>

#include "oracles.hpp"
#include "qubit_state.hpp"
#include "sweep.hpp"

namespace bellkcc::io {

// 12 significant digits in plain decimal notation; "inf"/"-inf"/"nan" for
// non-finite values.
std::string format_number(double x);

// format_number parsed back, so JSON carries the same values as CSV.
double round_to_printed(double x);

// {"matrix": [[[re, im], x4] x4]} row-major in |00>,|01>,|10>,|11>.
// Parse failures throw ParseError; invariant failures throw the violated code.
Matrix4c parse_state_matrix(const std::string& text);
TwoQubitState parse_state(const std::string& text);
std::string state_to_json(const TwoQubitState& rho);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

// "beta,bfv,dbfv" then steps + 1 rows.
std::string series_csv(const sweep::SweepSeries& series);
std::string series_json(const sweep::SweepSeries& series);
// Single-panel line chart of dbfv against beta.
std::string series_svg(const sweep::SweepSeries& series);

std::string comparison_csv(const oracles::ComparisonReport& report);

}  // namespace bellkcc::io
