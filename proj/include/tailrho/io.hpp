#pragma once

#include "tailrho/copula.hpp"
#include "tailrho/mc.hpp"

#include <cstddef>
#include <filesystem>
#include <istream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tailrho {

//! Malformed input; line() is 1-based, 0 when no line applies.
class ParseError : public std::runtime_error
{
public:
  ParseError(const std::string& message, std::size_t line);
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

// Data files hold two numeric columns separated by a comma or whitespace.
// Blank lines and lines starting with '#' are skipped. At least two rows.
Sample parse_data(std::istream& in);
Sample read_data_file(const std::filesystem::path& path);

//! Six significant digits; "NA" for NaN or infinity.
std::string format_number(double x);

inline constexpr const char* simulate_header =
  "theta,n,p,m,abs_bias_emp,abs_bias_bern,var_emp,var_bern,mse_emp,mse_bern,mse_reduction_pct";
inline constexpr const char* sweep_header =
  "theta,n,p,m,abs_bias_emp,abs_bias_bern,var_emp,var_bern,mse_emp,mse_bern";

//! Result table with simulate_header (or sweep_header when
//! with_reduction is false), one line per row.
std::string results_csv(std::span<const CellSummary> rows, bool with_reduction = true);

//! Reads back a table written by results_csv. "NA" becomes NaN. Fields that
//! the file does not carry (reps, rho, and the reduction for sweeps) are NaN
//! or zero.
std::vector<CellSummary> parse_results_csv(std::istream& in);

//! Writes to a sibling temporary file and renames it over `path`, so readers
//! never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace tailrho
