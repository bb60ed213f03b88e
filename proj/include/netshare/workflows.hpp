#pragma once

#include <string>
#include <vector>

#include "netshare/config.hpp"
#include "netshare/optimize.hpp"
#include "netshare/rate.hpp"
#include "netshare/report.hpp"

namespace netshare {

inline constexpr const char* kToolVersion = "0.1.0";

RateReport run_analyze(const RunConfig& c);

/// Analytic rates next to Monte Carlo estimates for the three association
/// modes. Rows: r_bar_1, r_bar_2, r_tilde_1, r_tilde_2, r_tilde_sum.
std::vector<ComparisonRow> run_simulate(const RunConfig& c);

DensityOptimum run_optimize(const RunConfig& c);

/// One density-optimized cell per (w, p): operator 2 gets W2 = w W1 and
/// P2 = p P1; each setup is optimized separately. Cells are ordered with p
/// outer and w inner. Numerical failures are recorded in the cell.
std::vector<TableCell> run_table(const RunConfig& c, const std::vector<double>& w_ratios,
                                 const std::vector<double>& p_ratios);

/// Scenario of one table cell before density optimization.
Scenario table_cell_scenario(const Scenario& tmpl, double w_ratio, double p_ratio);

/// Reproducible record of a run: the resolved config text plus the
/// command-specific settings.
struct RunManifest {
  std::string command;
  std::string config;  // render_config() output
  std::vector<double> w_ratios;
  std::vector<double> p_ratios;
  unsigned threads = 0;
  std::string tool_version = kToolVersion;
  std::string timestamp;

  std::string to_json() const;
  static RunManifest from_json(const std::string& text);
};

}  // namespace netshare
