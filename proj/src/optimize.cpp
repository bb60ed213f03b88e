#include "netshare/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "netshare/errors.hpp"

namespace netshare {

namespace {

constexpr double kInvPhi = 0.6180339887498948482;
// Slack for the neighbour check: rates carry quadrature noise.
constexpr double kNeighbourSlack = 1e-8;

struct Sweep {
  std::vector<ProfilePoint> profile;
  double best_lambda = 0.0;
  double best_rate = 0.0;
  bool boundary = false;
  bool plateau = false;
};

template <class F>
Sweep sweep_1d(F&& rate_at, const DensitySearch& search) {
  Sweep out;
  const double lo = std::log(search.lambda_min);
  const double hi = std::log(search.lambda_max);
  if (search.lambda_min == search.lambda_max) {
    const double r = rate_at(search.lambda_min);
    out.profile.push_back({search.lambda_min, r});
    out.best_lambda = search.lambda_min;
    out.best_rate = r;
    return out;
  }
  const int n = search.grid_points;
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = lo + (hi - lo) * i / (n - 1);
  std::size_t best = 0;
  for (int i = 0; i < n; ++i) {
    const double lam = i == 0 ? search.lambda_min
                       : i == n - 1 ? search.lambda_max
                                    : std::exp(grid[i]);
    out.profile.push_back({lam, rate_at(lam)});
    if (out.profile.back().rate > out.profile[best].rate) best = static_cast<std::size_t>(i);
  }
  const auto [mn, mx] = std::minmax_element(out.profile.begin(), out.profile.end(),
                                            [](auto& a, auto& b) { return a.rate < b.rate; });
  out.plateau = mx->rate - mn->rate <= search.plateau_rel_tol * std::abs(mx->rate);
  out.boundary = !out.plateau && (best == 0 || best + 1 == static_cast<std::size_t>(n));
  out.best_lambda = out.profile[best].lambda;
  out.best_rate = out.profile[best].rate;
  if (out.plateau) return out;

  // Golden section on [grid[best-1], grid[best+1]] in log lambda.
  double a = grid[best == 0 ? 0 : best - 1];
  double b = grid[std::min<std::size_t>(best + 1, n - 1)];
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = rate_at(std::exp(c));
  double fd = rate_at(std::exp(d));
  for (int it = 0; it < search.refine_iters; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = rate_at(std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = rate_at(std::exp(d));
    }
  }
  const double cand_w = fc >= fd ? c : d;
  const double cand_r = std::max(fc, fd);
  // Refinement never returns less than the best grid value.
  if (cand_r > out.best_rate) {
    out.best_lambda = std::exp(cand_w);
    out.best_rate = cand_r;
  }
  return out;
}

}  // namespace

std::string to_string(Objective o) { return o == Objective::NonSharing ? "nonsharing" : "sharing"; }

Objective objective_from_string(const std::string& s) {
  if (s == "nonsharing") return Objective::NonSharing;
  if (s == "sharing") return Objective::Sharing;
  throw ValidationError("optimize.objective", "expected nonsharing or sharing");
}

void DensitySearch::validate() const {
  if (!(lambda_min > 0.0) || !(lambda_max >= lambda_min) || !std::isfinite(lambda_max)) {
    throw ValidationError("optimize.lambda_range", "need 0 < lambda_min <= lambda_max");
  }
  if (grid_points < 8) throw ValidationError("optimize.grid_points", "must be >= 8");
  if (refine_iters < 0) throw ValidationError("optimize.refine_iters", "must be >= 0");
  if (!(neighbour_step > 0.0 && neighbour_step < 1.0)) {
    throw ValidationError("optimize.neighbour_step", "must lie in (0, 1)");
  }
}

double objective_rate(const Scenario& tmpl, double lambda1, double lambda2, Objective objective,
                      const QuadratureConfig& qc, const RateOptions& opt) {
  Scenario s = tmpl;
  s.op1.density_lambda = lambda1;
  s.op2.density_lambda = lambda2;
  const auto r = aggregate_rates(s, qc, opt,
                                 objective == Objective::NonSharing ? Setup::NonSharing : Setup::Sharing);
  return objective == Objective::NonSharing ? r.r_nsh : r.r_sh;
}

DensityOptimum optimal_density(const Scenario& tmpl, const DensitySearch& search,
                               const QuadratureConfig& qc, const RateOptions& opt) {
  search.validate();
  DensityOptimum out;
  auto eval = [&](double l1, double l2) { return objective_rate(tmpl, l1, l2, search.objective, qc, opt); };

  if (!search.independent) {
    const auto sw = sweep_1d([&](double lam) { return eval(lam, lam); }, search);
    out.profile = sw.profile;
    out.lambda_star = out.lambda2_star = sw.best_lambda;
    out.rate_star = sw.best_rate;
    out.boundary = sw.boundary;
    out.plateau = sw.plateau;
  } else {
    // Two rounds of coordinate ascent starting from the template densities.
    double l1 = std::clamp(tmpl.op1.density_lambda, search.lambda_min, search.lambda_max);
    double l2 = std::clamp(tmpl.op2.density_lambda, search.lambda_min, search.lambda_max);
    Sweep sw;
    for (int round = 0; round < 2; ++round) {
      sw = sweep_1d([&](double lam) { return eval(lam, l2); }, search);
      l1 = sw.best_lambda;
      out.boundary = sw.boundary;
      out.plateau = sw.plateau;
      if (round == 0) out.profile = sw.profile;
      sw = sweep_1d([&](double lam) { return eval(l1, lam); }, search);
      l2 = sw.best_lambda;
      out.boundary = out.boundary || sw.boundary;
      out.plateau = out.plateau && sw.plateau;
    }
    out.lambda_star = l1;
    out.lambda2_star = l2;
    out.rate_star = sw.best_rate;
  }

  const double step = search.neighbour_step;
  const double slack = kNeighbourSlack * std::abs(out.rate_star);
  const double ratio2 = out.lambda2_star / out.lambda_star;
  const double up = eval(out.lambda_star * (1.0 + step), out.lambda_star * (1.0 + step) * ratio2);
  const double down = eval(out.lambda_star * (1.0 - step), out.lambda_star * (1.0 - step) * ratio2);
  out.neighbour_check = up <= out.rate_star + slack && down <= out.rate_star + slack;
  return out;
}

}  // namespace netshare
