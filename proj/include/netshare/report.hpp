#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "netshare/optimize.hpp"
#include "netshare/rate.hpp"

namespace netshare {

/// One (W2/W1, P2/P1) cell of the sharing-vs-non-sharing table. NaN marks a
/// failed cell.
struct TableCell {
  double w_ratio = 0.0;
  double p_ratio = 0.0;
  double r_nsh_mbit_s = 0.0;
  double r_sh_mbit_s = 0.0;
  double ratio = 0.0;
  double lambda_nsh = 0.0;  // per m^2, pretty printer only
  double lambda_sh = 0.0;
  std::string error;        // non-empty when the cell failed
};

/// One analytic-vs-simulated comparison row.
struct ComparisonRow {
  std::string quantity;
  double analytic = 0.0;
  double mc_mean = 0.0;
  double mc_stderr = 0.0;
  double rel_gap = 0.0;
  double no_coverage_fraction = 0.0;
};

/// Shortest decimal text that parses back to the same double.
std::string format_double(double d);

// CSV emitters: header row plus data rows, '.' decimal separator, '\n' endings.
std::string rate_report_csv(const RateReport& r);
std::string profile_csv(const std::vector<ProfilePoint>& profile);
std::string table_csv(const std::vector<TableCell>& cells);
std::string comparison_csv(const std::vector<ComparisonRow>& rows);

// Inverse parsers; throw std::invalid_argument on header or field mismatch.
RateReport parse_rate_report_csv(std::string_view csv);
std::vector<ProfilePoint> parse_profile_csv(std::string_view csv);
std::vector<TableCell> parse_table_csv(std::string_view csv);
std::vector<ComparisonRow> parse_comparison_csv(std::string_view csv);

// Human-readable renderings.
void print_rate_report(std::ostream& os, const RateReport& r);
void print_comparison(std::ostream& os, const std::vector<ComparisonRow>& rows);
/// Table laid out with w-ratios as columns and p-ratios as rows, the
/// non-sharing block above the sharing block, one decimal in Mbit/s.
void print_table(std::ostream& os, const std::vector<TableCell>& cells,
                 const std::vector<double>& w_ratios, const std::vector<double>& p_ratios);

}  // namespace netshare
