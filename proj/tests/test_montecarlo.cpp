#include <atomic>
#include <random>

#include "doctest.h"
#include "netshare/errors.hpp"
#include "netshare/intensity.hpp"
#include "netshare/interference.hpp"
#include "netshare/montecarlo.hpp"
#include "netshare/rate.hpp"
#include "support.hpp"

using namespace netshare;
using nstest::rel_diff;

TEST_SUITE("montecarlo") {

TEST_CASE("empty operator gives empty realizations") {
  auto s = nstest::sec4();
  s.op2.density_lambda = 0.0;
  SimConfig sim;
  for (std::uint64_t i = 0; i < 20; ++i) CHECK(sample_network(s, sim, i).op2.empty());
}

TEST_CASE("point counts are Poisson with mean lambda pi R^2") {
  const auto s = nstest::sec4(1e-4);
  SimConfig sim;
  sim.window_radius = 3000.0;
  const double mean = 1e-4 * M_PI * 9e6;
  CHECK(mean == doctest::Approx(2827.4).epsilon(1e-4));
  double sum = 0.0, sum2 = 0.0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    const double c = static_cast<double>(sample_network(s, sim, i).op1.size());
    sum += c;
    sum2 += c * c;
  }
  const double m = sum / n;
  CHECK(std::abs(m - mean) < 3.0 * std::sqrt(mean / n));
  const double var = sum2 / n - m * m;
  CHECK(var == doctest::Approx(mean).epsilon(0.15));
}

TEST_CASE("points are uniform in the disc") {
  const auto s = nstest::sec4(1e-4);
  SimConfig sim;
  sim.window_radius = 2000.0;
  std::vector<double> r2;
  for (int i = 0; i < 20; ++i) {
    for (const auto& b : sample_network(s, sim, i).op1) {
      CHECK(b.distance <= sim.window_radius);
      r2.push_back(b.distance * b.distance);
    }
  }
  // r^2 / R^2 is uniform on [0, 1]
  const double d = ks_distance(r2, [](double v) { return std::clamp(v / 4e6, 0.0, 1.0); });
  CHECK(d < 1.63 / std::sqrt(static_cast<double>(r2.size())));
}

TEST_CASE("LOS thinning inside and outside the ball") {
  const auto s = nstest::sec4(3e-3);
  SimConfig sim;
  sim.window_radius = 400.0;
  long inner = 0, inner_los = 0, outer = 0, outer_los = 0;
  for (int i = 0; i < 400; ++i) {
    for (const auto& b : sample_network(s, sim, i).op1) {
      const bool los = b.state == LinkState::Los;
      if (b.distance < s.link_state.ball_radius_d) {
        ++inner;
        inner_los += los;
      } else {
        ++outer;
        outer_los += los;
      }
    }
  }
  const double p = 0.7195;
  CHECK(std::abs(static_cast<double>(inner_los) / inner - p) < 4.0 * std::sqrt(p * (1 - p) / inner));
  CHECK(static_cast<double>(outer_los) / outer < 0.0002 + 4.0 * std::sqrt(0.0002 / outer));
}

TEST_CASE("fading gains are unit-mean exponential") {
  const auto s = nstest::sec4(1e-4);
  SimConfig sim;
  sim.window_radius = 2000.0;
  std::vector<double> g;
  for (int i = 0; i < 10; ++i) {
    for (const auto& b : sample_network(s, sim, i).op2) g.push_back(b.fading);
  }
  const double d = ks_distance(g, [](double v) { return v <= 0.0 ? 0.0 : -std::expm1(-v); });
  CHECK(d < 1.63 / std::sqrt(static_cast<double>(g.size())));
}

TEST_CASE("min_pathloss") {
  const PathLossParams unit{1.0, 2.5, 3.5};
  NetworkRealization net;
  net.op1 = {{1.0, LinkState::Los, 1.0}};
  CHECK(*min_pathloss(net, OperatorSet::Op1, unit) == 1.0);
  CHECK_FALSE(min_pathloss(net, OperatorSet::Op2, unit).has_value());

  // Closer NLOS (2^3.5 = 11.3) loses to a farther LOS link (2.5^2.5 = 9.88).
  net.op2 = {{2.0, LinkState::Nlos, 1.0}, {2.5, LinkState::Los, 1.0}};
  CHECK(*min_pathloss(net, OperatorSet::Op2, unit) == doctest::Approx(std::pow(2.5, 2.5)));
  CHECK(*min_pathloss(net, OperatorSet::Union, unit) == 1.0);
}

TEST_CASE("single-link rate averages log2(1 + g)") {
  // One BS at unit path loss and noise equal to the power: SNR = g ~ Exp(1).
  Scenario s = nstest::sec4();
  s.path_loss.k = 1.0;
  RateOptions opt;
  opt.noise_override_w = s.op1.power_p;
  std::mt19937_64 rng(2024);
  std::exponential_distribution<double> expo(1.0);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  NetworkRealization net;
  for (int i = 0; i < n; ++i) {
    net.op1 = {{1.0, LinkState::Los, expo(rng)}};
    const auto r = realization_rate(net, s, SimMode::NonsharingOp1, opt);
    CHECK(r.serving_operator == 1);
    sum += r.rate_bit_s_hz;
    sum2 += r.rate_bit_s_hz * r.rate_bit_s_hz;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum2 / n - mean * mean) / n);
  const double exact = 0.596347362323194 / std::log(2.0);
  CHECK(exact == doctest::Approx(0.8605).epsilon(1e-4));
  CHECK(std::abs(mean - exact) < 4.0 * se);
}

TEST_CASE("realization rate uses the mode's association and interferers") {
  Scenario s = nstest::sec4();
  s.path_loss.k = 1.0;
  RateOptions opt;
  opt.noise_override_w = 0.0;
  NetworkRealization net;
  net.op1 = {{1.0, LinkState::Los, 1.0}, {2.0, LinkState::Los, 1.0}};
  net.op2 = {{1.5, LinkState::Los, 1.0}};
  s.op2.power_p = 5.0;
  const double l2 = std::pow(2.0, 2.5), l15 = std::pow(1.5, 2.5);
  // Non-sharing: the other operator's BS does not interfere.
  CHECK(realization_rate(net, s, SimMode::NonsharingOp1, opt).rate_bit_s_hz ==
        doctest::Approx(std::log2(1.0 + l2)));
  // Sharing: everyone interferes with power-weighted terms.
  const double sinr = 20.0 / (20.0 / l2 + 5.0 / l15);
  const auto sh = realization_rate(net, s, SimMode::Sharing, opt);
  CHECK(sh.serving_operator == 1);
  CHECK(sh.rate_bit_s_hz == doctest::Approx(std::log2(1.0 + sinr)));
  net.op1.clear();
  net.op2.clear();
  CHECK(realization_rate(net, s, SimMode::Sharing, opt).serving_operator == 0);
}

TEST_CASE("reproducible and thread-count independent") {
  const auto s = nstest::all_nlos();
  SimConfig sim;
  sim.num_realizations = 600;
  sim.rng_seed = 77;
  sim.threads = 1;
  const auto a = estimate_rate(s, sim, SimMode::Sharing);
  sim.threads = 4;
  const auto b = estimate_rate(s, sim, SimMode::Sharing);
  CHECK(a.mean_rate_bit_s_hz == b.mean_rate_bit_s_hz);
  CHECK(a.stderr_bit_s_hz == b.stderr_bit_s_hz);
  CHECK(a.by_serving_operator == b.by_serving_operator);
  sim.rng_seed = 78;
  CHECK(estimate_rate(s, sim, SimMode::Sharing).mean_rate_bit_s_hz != a.mean_rate_bit_s_hz);
  CHECK(a.by_serving_operator[0] + a.by_serving_operator[1] == doctest::Approx(a.mean_rate_bit_s_hz));
}

TEST_CASE("one realization has an infinite standard error") {
  SimConfig sim;
  sim.num_realizations = 1;
  const auto e = estimate_rate(nstest::sec4(), sim, SimMode::NonsharingOp1);
  CHECK(std::isfinite(e.mean_rate_bit_s_hz));
  CHECK(std::isinf(e.stderr_bit_s_hz));
}

TEST_CASE("window enlargement changes estimates by less than one standard error") {
  const auto s = nstest::sec4();
  SimConfig sim;
  sim.num_realizations = 2000;
  sim.rng_seed = 5;
  for (auto mode : {SimMode::NonsharingOp1, SimMode::Sharing}) {
    const auto a = estimate_rate(s, sim, mode);
    SimConfig wide = sim;
    wide.window_radius = 1.5 * default_window_radius(s);
    const auto b = estimate_rate(s, wide, mode);
    CHECK(std::abs(a.mean_rate_bit_s_hz - b.mean_rate_bit_s_hz) < a.stderr_bit_s_hz);
  }
}

TEST_CASE("estimates agree with the analytic rates") {
  const auto s = nstest::all_nlos();
  SimConfig sim;
  sim.num_realizations = 3000;
  sim.rng_seed = 31;
  const QuadratureConfig qc;
  const auto e2 = estimate_rate(s, sim, SimMode::NonsharingOp2);
  CHECK(std::abs(e2.mean_rate_bit_s_hz - rate_nonsharing(2, s, qc)) < 4.0 * e2.stderr_bit_s_hz);
  const auto sh = estimate_rate(s, sim, SimMode::Sharing);
  CHECK(std::abs(sh.by_serving_operator[0] - rate_sharing(1, s, qc)) < 4.0 * sh.by_serving_operator_stderr[0]);
  CHECK(std::abs(sh.by_serving_operator[1] - rate_sharing(2, s, qc)) < 4.0 * sh.by_serving_operator_stderr[1]);
}

TEST_CASE("min path-loss sample follows the analytic distribution") {
  const auto s = nstest::sec4();
  SimConfig sim;
  sim.num_realizations = 3000;
  const auto c1 = IntensityContext::of(s, 1);
  const auto c2 = IntensityContext::of(s, 2);
  const auto one = sample_min_pathloss(s, sim, OperatorSet::Op1);
  CHECK(one.no_coverage == 0);
  CHECK(ks_distance(one.values, [&](double x) { return cdf_min_pathloss(x, c1); }) < 0.03);
  const auto both = sample_min_pathloss(s, sim, OperatorSet::Union);
  CHECK(ks_distance(both.values, [&](double x) {
          return -std::expm1(-intensity_measure_total(x, c1) - intensity_measure_total(x, c2));
        }) < 0.03);
}

TEST_CASE("interference MGF estimate agrees with the closed form") {
  const auto s = nstest::sec4();
  SimConfig sim;
  sim.num_realizations = 3000;
  const double x = path_loss(100.0, LinkState::Los, s.path_loss);
  for (double ratio : {0.2, 1.0}) {
    const double z = ratio * x;
    const auto e = estimate_interference_mgf(s, sim, z, x, OperatorSet::Op1);
    CHECK(std::abs(e.mean - mgf_nonsharing(z, x, 1, s)) < 4.0 * e.stderr_ + 1e-12);
    const auto u = estimate_interference_mgf(s, sim, z / s.op1.power_p, x, OperatorSet::Union);
    CHECK(std::abs(u.mean - mgf_sharing(z / s.op1.power_p, x, s)) < 4.0 * u.stderr_ + 1e-12);
  }
}

TEST_CASE("far-field interferers are included with the automatic window") {
  // At 300 m NLOS the LOS interferers that matter sit beyond the default window.
  const auto s = nstest::sec4(1e-4);
  SimConfig sim;
  sim.num_realizations = 2000;
  sim.rng_seed = 99;
  const double x = path_loss(300.0, LinkState::Nlos, s.path_loss);
  const double z = 0.01 * x;
  const double ref = mgf_nonsharing(z, x, 1, s);
  const auto e = estimate_interference_mgf(s, sim, z, x, OperatorSet::Op1);
  CHECK(std::abs(e.mean - ref) < 4.0 * e.stderr_ + kFarFieldLogTolerance);
  sim.window_radius = resolved_window_radius(s, SimConfig{});
  const auto truncated = estimate_interference_mgf(s, sim, z, x, OperatorSet::Op1);
  CHECK(truncated.mean - ref > 4.0 * truncated.stderr_);
}

TEST_CASE("ks_distance") {
  std::vector<double> q;
  for (int i = 0; i < 1000; ++i) q.push_back((i + 0.5) / 1000.0);
  CHECK(ks_distance(q, [](double v) { return v; }) == doctest::Approx(0.0005));
  q.back() = INFINITY;  // an uncovered draw: the sample lacks mass the CDF reaches
  CHECK(ks_distance(q, [](double v) { return std::min(v, 1.0); }) == doctest::Approx(0.001));
  CHECK_THROWS_AS(ks_distance({}, [](double v) { return v; }), DomainError);
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 8, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
}

TEST_CASE("default window and validation") {
  const auto s = nstest::all_nlos();
  CHECK(default_window_radius(s) == doctest::Approx(kWindowNeighbourMultiple / (2.0 * std::sqrt(20e-6))));
  SimConfig sim;
  sim.window_radius = 123.0;
  CHECK(resolved_window_radius(s, sim) == 123.0);
  sim.window_radius = -1.0;
  CHECK_THROWS_AS(sim.validate(), ValidationError);
  sim.window_radius = 0.0;
  sim.num_realizations = 0;
  CHECK_THROWS_AS(sim.validate(), ValidationError);
}

}  // TEST_SUITE
