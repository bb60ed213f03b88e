#include "netshare/workflows.hpp"

#include <cmath>
#include <json.hpp>

#include "netshare/errors.hpp"
#include "netshare/montecarlo.hpp"

namespace netshare {

namespace {

double rel_gap(double analytic, double simulated) {
  if (analytic == 0.0) return simulated == 0.0 ? 0.0 : std::nan("");
  return (simulated - analytic) / analytic;
}

}  // namespace

RateReport run_analyze(const RunConfig& c) { return aggregate_rates(c.scenario, c.quadrature, c.rate); }

std::vector<ComparisonRow> run_simulate(const RunConfig& c) {
  const auto r = run_analyze(c);
  const auto m1 = estimate_rate(c.scenario, c.sim, SimMode::NonsharingOp1, c.rate);
  const auto m2 = estimate_rate(c.scenario, c.sim, SimMode::NonsharingOp2, c.rate);
  const auto ms = estimate_rate(c.scenario, c.sim, SimMode::Sharing, c.rate);
  auto row = [](std::string name, double analytic, double mean, double se, double no_cov) {
    return ComparisonRow{std::move(name), analytic, mean, se, rel_gap(analytic, mean), no_cov};
  };
  return {
      row("r_bar_1", r.r_bar_1, m1.mean_rate_bit_s_hz, m1.stderr_bit_s_hz, m1.no_coverage_fraction),
      row("r_bar_2", r.r_bar_2, m2.mean_rate_bit_s_hz, m2.stderr_bit_s_hz, m2.no_coverage_fraction),
      row("r_tilde_1", r.r_tilde_1, ms.by_serving_operator[0], ms.by_serving_operator_stderr[0],
          ms.no_coverage_fraction),
      row("r_tilde_2", r.r_tilde_2, ms.by_serving_operator[1], ms.by_serving_operator_stderr[1],
          ms.no_coverage_fraction),
      row("r_tilde_sum", r.r_tilde_1 + r.r_tilde_2, ms.mean_rate_bit_s_hz, ms.stderr_bit_s_hz,
          ms.no_coverage_fraction),
  };
}

DensityOptimum run_optimize(const RunConfig& c) {
  return optimal_density(c.scenario, c.search, c.quadrature, c.rate);
}

Scenario table_cell_scenario(const Scenario& tmpl, double w_ratio, double p_ratio) {
  Scenario s = tmpl;
  s.op2.bandwidth_w = w_ratio * tmpl.op1.bandwidth_w;
  s.op2.power_p = p_ratio * tmpl.op1.power_p;
  s.op2.density_lambda = tmpl.op1.density_lambda;
  return s;
}

std::vector<TableCell> run_table(const RunConfig& c, const std::vector<double>& w_ratios,
                                 const std::vector<double>& p_ratios) {
  if (w_ratios.empty() || p_ratios.empty()) {
    throw ValidationError("table", "ratio lists must be non-empty");
  }
  for (double v : w_ratios) {
    if (!(v > 0.0)) throw ValidationError("--w-ratios", "ratios must be positive");
  }
  for (double v : p_ratios) {
    if (!(v > 0.0)) throw ValidationError("--p-ratios", "ratios must be positive");
  }
  std::vector<TableCell> cells;
  for (double p : p_ratios) {
    for (double w : w_ratios) {
      TableCell cell;
      cell.w_ratio = w;
      cell.p_ratio = p;
      cells.push_back(cell);
    }
  }
  parallel_for(cells.size(), c.sim.threads, [&](std::size_t i) {
    auto& cell = cells[i];
    try {
      const Scenario s = table_cell_scenario(c.scenario, cell.w_ratio, cell.p_ratio);
      DensitySearch search = c.search;
      search.independent = false;
      search.objective = Objective::NonSharing;
      const auto nsh = optimal_density(s, search, c.quadrature, c.rate);
      search.objective = Objective::Sharing;
      const auto sh = optimal_density(s, search, c.quadrature, c.rate);
      cell.r_nsh_mbit_s = nsh.rate_star / 1e6;
      cell.r_sh_mbit_s = sh.rate_star / 1e6;
      cell.ratio = sh.rate_star / nsh.rate_star;
      cell.lambda_nsh = nsh.lambda_star;
      cell.lambda_sh = sh.lambda_star;
    } catch (const NumericalError& e) {
      cell.r_nsh_mbit_s = cell.r_sh_mbit_s = cell.ratio = std::nan("");
      cell.error = e.what();
    }
  });
  return cells;
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = "netshare";
  j["tool_version"] = tool_version;
  j["command"] = command;
  j["timestamp"] = timestamp;
  j["threads"] = threads;
  if (!w_ratios.empty()) j["w_ratios"] = w_ratios;
  if (!p_ratios.empty()) j["p_ratios"] = p_ratios;
  j["config"] = config;
  return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& text) {
  RunManifest m;
  try {
    const auto j = nlohmann::json::parse(text);
    m.command = j.at("command").get<std::string>();
    m.config = j.at("config").get<std::string>();
    m.tool_version = j.value("tool_version", std::string(kToolVersion));
    m.timestamp = j.value("timestamp", std::string());
    m.threads = j.value("threads", 0u);
    if (j.contains("w_ratios")) m.w_ratios = j["w_ratios"].get<std::vector<double>>();
    if (j.contains("p_ratios")) m.p_ratios = j["p_ratios"].get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("manifest", 0, e.what());
  }
  return m;
}

}  // namespace netshare
