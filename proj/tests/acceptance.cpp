// Acceptance suite: one line per criterion, nonzero exit if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "netshare/config.hpp"
#include "netshare/intensity.hpp"
#include "netshare/interference.hpp"
#include "netshare/montecarlo.hpp"
#include "netshare/optimize.hpp"
#include "netshare/rate.hpp"
#include "netshare/specfun.hpp"
#include "netshare/workflows.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace netshare;
using nstest::rel_diff;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED(" << what << ")";
    }
  }
};

int failures = 0;

void criterion(const char* id, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " exception: " << e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("[%s] %s %s |%s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.str().c_str(), secs);
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

RunConfig sec4_config() { return load_config(nstest::config_path("paper_sec4.cfg")); }
RunConfig nlos_config() { return load_config(nstest::config_path("all_nlos.cfg")); }

// z at which the closed-form MGF equals target, by bisection in log z.
double z_for_mgf(const std::function<double(double)>& mgf, double target) {
  double lo = std::log(1e-30), hi = std::log(1e30);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mgf(std::exp(mid)) > target ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

}  // namespace

int main() {
  std::vector<TableCell> table;
  const std::vector<double> ratios = {0.2, 1.0, 5.0};

  criterion("AC1", "sharing/non-sharing ratio in [1.8, 2.1] on the 9-cell grid", [&](Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    table = run_table(sec4_config(), ratios, ratios);
    const double secs = seconds_since(t0);
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& c : table) {
      o.require(c.error.empty(), "cell W=" + fmt(c.w_ratio) + " P=" + fmt(c.p_ratio) + ": " + c.error);
      o.require(c.ratio >= 1.8 && c.ratio <= 2.1,
                "ratio " + fmt(c.ratio) + " at W=" + fmt(c.w_ratio) + " P=" + fmt(c.p_ratio));
      lo = std::min(lo, c.ratio);
      hi = std::max(hi, c.ratio);
    }
    o.require(table.size() == 9, "cell count");
    o.require(secs < 600.0, "runtime " + fmt(secs) + " s");
    o.detail << " ratios " << fmt(lo) << ".." << fmt(hi) << ", grid " << fmt(secs) << " s";
  });

  criterion("AC2", "non-sharing spread over P2/P1 below 2% at fixed W2/W1", [&](Outcome& o) {
    o.require(table.size() == 9, "table from AC1 unavailable");
    for (double w : ratios) {
      double lo = INFINITY, hi = -INFINITY;
      for (const auto& c : table) {
        if (c.w_ratio != w) continue;
        lo = std::min(lo, c.r_nsh_mbit_s);
        hi = std::max(hi, c.r_nsh_mbit_s);
      }
      const double spread = (hi - lo) / lo;
      o.require(spread < 0.02, "W=" + fmt(w) + " spread " + fmt(spread));
      o.detail << " W=" << fmt(w) << ": " << fmt(100.0 * spread) << "%";
    }
  });

  criterion("AC3", "analytic rates within 3% of Monte Carlo (1e4 realizations)", [&](Outcome& o) {
    for (auto [name, cfg] : {std::pair{"sec4", sec4_config()}, std::pair{"all_nlos", nlos_config()}}) {
      const auto t0 = std::chrono::steady_clock::now();
      o.require(cfg.sim.num_realizations == 10000, std::string(name) + " realizations");
      const auto rows = run_simulate(cfg);
      const double secs = seconds_since(t0);
      for (const auto& r : rows) {
        if (r.quantity != "r_bar_1" && r.quantity != "r_bar_2" && r.quantity != "r_tilde_sum") continue;
        o.require(std::abs(r.rel_gap) <= 0.03, std::string(name) + " " + r.quantity + " gap " + fmt(r.rel_gap));
        o.detail << " " << name << "." << r.quantity << " " << fmt(100.0 * r.rel_gap) << "%";
      }
      o.require(secs < 300.0, std::string(name) + " runtime " + fmt(secs) + " s");
    }
  });

  criterion("AC4", "KS distance of the smallest path loss <= 0.02 (1e4 draws)", [&](Outcome& o) {
    for (const auto& cfg : {sec4_config(), nlos_config()}) {
      SimConfig sim = cfg.sim;
      sim.num_realizations = 10000;
      const auto& s = cfg.scenario;
      const auto c1 = IntensityContext::of(s, 1);
      const auto c2 = IntensityContext::of(s, 2);
      const double single = ks_distance(sample_min_pathloss(s, sim, OperatorSet::Op1).values,
                                        [&](double x) { return cdf_min_pathloss(x, c1); });
      const double both = ks_distance(sample_min_pathloss(s, sim, OperatorSet::Union).values, [&](double x) {
        return -std::expm1(-intensity_measure_total(x, c1) - intensity_measure_total(x, c2));
      });
      o.require(single <= 0.02, "single " + fmt(single));
      o.require(both <= 0.02, "union " + fmt(both));
      o.detail << " single " << fmt(single) << " union " << fmt(both);
    }
  });

  criterion("AC5", "MGF normalization and Monte Carlo interference MGF within 2%", [&](Outcome& o) {
    const auto s = nstest::sec4(1e-4);
    const auto ctx = IntensityContext::of(s, 1);
    int exact = 0, total = 0;
    for (int i = 0; i < 20; ++i) {
      const double x = s.path_loss.k * std::pow(10.0, 0.6 * i);
      for (double v : {mgf_component(0.0, x, LinkState::Los, ctx), mgf_component(0.0, x, LinkState::Nlos, ctx),
                       mgf_nonsharing(0.0, x, 1, s), mgf_nonsharing(0.0, x, 2, s), mgf_sharing(0.0, x, s)}) {
        ++total;
        exact += v == 1.0;
      }
    }
    o.require(exact == total, "MGF(0) != 1 at " + std::to_string(total - exact) + " points");
    o.detail << " MGF(0)=1 at " << exact << "/" << total;

    SimConfig sim;
    sim.num_realizations = 10000;
    sim.rng_seed = 424242;
    struct Point {
      double z, x;
      OperatorSet set;
    };
    std::vector<Point> points;
    const double x100 = path_loss(100.0, LinkState::Los, s.path_loss);
    points.push_back({1.0, x100, OperatorSet::Op1});
    for (auto [r, st, target] : {std::tuple{100.0, LinkState::Los, 0.9}, std::tuple{60.0, LinkState::Los, 0.8},
                                 std::tuple{300.0, LinkState::Nlos, 0.7}}) {
      const double x = path_loss(r, st, s.path_loss);
      points.push_back({z_for_mgf([&](double z) { return mgf_nonsharing(z, x, 1, s); }, target), x, OperatorSet::Op1});
    }
    points.push_back({z_for_mgf([&](double z) { return mgf_sharing(z, x100, s); }, 0.8), x100, OperatorSet::Union});
    for (const auto& p : points) {
      const double analytic =
          p.set == OperatorSet::Union ? mgf_sharing(p.z, p.x, s) : mgf_nonsharing(p.z, p.x, 1, s);
      const auto est = estimate_interference_mgf(s, sim, p.z, p.x, p.set);
      const double gap = rel_diff(est.mean, analytic);
      o.require(gap <= 0.02, "z=" + fmt(p.z) + " x=" + fmt(p.x) + " gap " + fmt(gap));
      o.detail << " [" << fmt(analytic) << " vs " << fmt(est.mean) << "]";
    }
  });

  criterion("AC6", "intensity continuity, derivative and normalization", [&](Outcome& o) {
    double worst_cont = 0.0, worst_fd = 0.0, worst_norm = 0.0;
    for (double lambda : {1e-6, 3e-5, 1e-4, 1e-3}) {
      for (const auto& base : {nstest::sec4(lambda), nstest::all_nlos()}) {
        auto s = base;
        s.op1.density_lambda = lambda;
        const auto ctx = IntensityContext::of(s, 1);
        for (auto st : {LinkState::Los, LinkState::Nlos}) {
          const double xb = ctx.breakpoint(st);
          worst_cont = std::max(worst_cont, rel_diff(detail::measure_inner_branch(xb, ctx, st),
                                                     detail::measure_outer_branch(xb, ctx, st)));
          for (double e = 0.0; e < 22.0; e += 0.1) {
            const double x = std::pow(10.0, e);
            if (std::abs(x - xb) <= 0.01 * x) continue;
            const double dens = intensity_density_state(x, ctx, st);
            if (dens == 0.0) continue;
            const double h = 1e-6 * x;
            const double fd =
                (intensity_measure_state(x + h, ctx, st) - intensity_measure_state(x - h, ctx, st)) / (2.0 * h);
            worst_fd = std::max(worst_fd, rel_diff(dens, fd));
          }
        }
        const double mass = nstest::log_integral([&](double x) { return pdf_min_pathloss(x, ctx); }, 1e-3, 1e35,
                                                 {ctx.breakpoint(LinkState::Los), ctx.breakpoint(LinkState::Nlos)});
        worst_norm = std::max(worst_norm, std::abs(mass - 1.0));
      }
    }
    o.require(worst_cont <= 1e-12, "continuity " + fmt(worst_cont));
    o.require(worst_fd <= 1e-6, "derivative " + fmt(worst_fd));
    o.require(worst_norm <= 1e-4, "normalization " + fmt(worst_norm));
    o.detail << " continuity " << fmt(worst_cont) << " derivative " << fmt(worst_fd) << " |int pdf - 1| "
             << fmt(worst_norm);
  });

  criterion("AC7", "special-function accuracy", [&](Outcome& o) {
    double series = 0.0, pfaff = 0.0, ident = 0.0;
    for (double alpha : {2.05, 2.5, 3.0, 3.5, 4.0, 6.0}) {
      const double d = 2.0 / alpha;
      for (int i = 0; i <= 900; ++i) {
        const double w = -0.001 * i;
        series = std::max(series, rel_diff(hyp2f1_interference(alpha, w), nstest::gauss_series(-d, 1, 1 - d, w, 5000)));
      }
    }
    for (double alpha : {2.5, 3.5, 4.0}) {
      std::vector<double> ws;
      for (double e = -6.0; e <= 6.0; e += 0.1) ws.push_back(-std::pow(10.0, e));
      for (double w = -10.0; w < 0.0; w += 0.25) ws.push_back(w);
      for (double w : ws) pfaff = std::max(pfaff, rel_diff(hyp2f1_interference(alpha, w), nstest::interference_2f1_pfaff(alpha, w)));
    }
    for (double w = -0.99; w < 0.99; w += 0.005) {
      if (std::abs(w) < 1e-9) continue;
      ident = std::max(ident, rel_diff(hyp2f1_series(1, 1, 2, w, 10000), -std::log1p(-w) / w));
    }
    o.require(series <= 1e-10, "series " + fmt(series));
    o.require(pfaff <= 1e-9, "Pfaff " + fmt(pfaff));
    o.require(ident <= 1e-10, "log identity " + fmt(ident));
    o.detail << " series " << fmt(series) << " Pfaff " << fmt(pfaff) << " identity " << fmt(ident);
  });

  criterion("AC8", "interior optimum, neighbour check and determinism", [&](Outcome& o) {
    const auto cfg = sec4_config();
    for (auto obj : {Objective::NonSharing, Objective::Sharing}) {
      DensitySearch search = cfg.search;
      search.objective = obj;
      const auto a = optimal_density(cfg.scenario, search, cfg.quadrature, cfg.rate);
      const auto b = optimal_density(cfg.scenario, search, cfg.quadrature, cfg.rate);
      const std::string tag = to_string(obj);
      o.require(!a.boundary && !a.plateau, tag + " maximum not interior");
      o.require(a.profile.front().rate < a.rate_star && a.profile.back().rate < a.rate_star, tag + " profile shape");
      o.require(a.neighbour_check, tag + " neighbour check");
      o.require(a.lambda_star == b.lambda_star && a.rate_star == b.rate_star && a.profile == b.profile,
                tag + " nondeterministic");
      o.detail << " " << tag << " lambda*=" << fmt(a.lambda_star * 1e6) << "/km^2";
    }
  });

  criterion("AC9", "operator-swap invariance and single-operator limits", [&](Outcome& o) {
    const QuadratureConfig qc;
    double swap = 0.0;
    for (auto s : {nstest::sec4(), nstest::all_nlos()}) {
      s.op2 = {7e-5, 35e6, 3.0, 5.0};
      const auto a = aggregate_rates(s, qc);
      const auto b = aggregate_rates(s.swapped(), qc);
      swap = std::max({swap, rel_diff(a.r_nsh, b.r_nsh), rel_diff(a.r_sh, b.r_sh)});
    }
    auto s = sec4_config().scenario;
    s.op2.density_lambda = 1e-12;
    s.op2.bandwidth_w = 0.0;
    const auto r = aggregate_rates(s, qc);
    const double nsh = rel_diff(r.r_nsh, s.op1.bandwidth_w * r.r_bar_1);
    const double sh = rel_diff(r.r_sh, 2.0 * s.op1.bandwidth_w * r.r_bar_1);
    o.require(swap <= 1e-10, "swap " + fmt(swap));
    o.require(nsh <= 1e-6, "R_nsh limit " + fmt(nsh));
    o.require(sh <= 1e-6, "R_sh limit " + fmt(sh));
    o.detail << " swap " << fmt(swap) << " R_nsh limit " << fmt(nsh) << " R_sh limit " << fmt(sh);
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
