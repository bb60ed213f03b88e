#include "netshare/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>
#include <thread>

#include "netshare/errors.hpp"

namespace netshare {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t replicate, int operator_index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(replicate * 4 + static_cast<std::uint64_t>(operator_index)));
}

std::vector<BsPoint> sample_operator(const OperatorParams& op, const LinkStateModel& ls,
                                     double radius, std::uint64_t seed) {
  std::vector<BsPoint> pts;
  if (op.density_lambda == 0.0) return pts;
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> area_step(op.density_lambda);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> fading(1.0);
  pts.reserve(static_cast<std::size_t>(op.density_lambda * std::numbers::pi * radius * radius * 1.1) + 16);
  // Areas pi r_n^2 of a homogeneous PPP form a 1-D Poisson process of rate lambda.
  double area = 0.0;
  const double max_area = std::numbers::pi * radius * radius;
  for (;;) {
    area += area_step(rng);
    if (area > max_area) break;
    const double r = std::sqrt(area / std::numbers::pi);
    const bool los = unit(rng) < link_state_prob(r, ls);
    const double g = fading(rng);
    pts.push_back({r, los ? LinkState::Los : LinkState::Nlos, g});
  }
  return pts;
}

// Sum of fading / path loss over the points of a state-S PPP of the given
// density on the annulus r0 < r <= r1 whose path loss is at least x.
double annulus_interference(double density, double r0, double r1, LinkState state,
                            const PathLossParams& p, double x, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> area_step(density);
  std::exponential_distribution<double> fading(1.0);
  double area = std::numbers::pi * r0 * r0;
  const double max_area = std::numbers::pi * r1 * r1;
  double sum = 0.0;
  for (;;) {
    area += area_step(rng);
    if (area > max_area) break;
    const double g = fading(rng);
    const double l = path_loss(std::sqrt(area / std::numbers::pi), state, p);
    if (l >= x) sum += g / l;
  }
  return sum;
}

// z * E[I] over a state-S PPP of the given density beyond radius r, where each
// interferer contributes weighted_z * fading / path loss.
double tail_mean(double density, double weighted_z, double r, LinkState state, const PathLossParams& p) {
  const double alpha = p.alpha(state);
  return 2.0 * std::numbers::pi * density * weighted_z * std::pow(r, 2.0 - alpha) / (p.k * (alpha - 2.0));
}

// Smallest radius (on a geometric ladder from r0) at which replacing the
// beyond-radius log-MGF by -tail_mean errs by at most tol. The error is bounded
// by u * tail_mean, with u = weighted_z / path loss at the radius.
double tail_radius(double density, double weighted_z, LinkState state, const PathLossParams& p, double r0,
                   double tol) {
  double r = r0;
  while (weighted_z / path_loss(r, state, p) * tail_mean(density, weighted_z, r, state, p) > tol) r *= 1.1;
  return r;
}

struct Interferer {
  double path_loss;
  double power;
  double fading;
  int op;
};

void collect(const NetworkRealization& net, OperatorSet set, const Scenario& s,
             std::vector<Interferer>& out) {
  out.clear();
  for (int j = 1; j <= 2; ++j) {
    if ((set == OperatorSet::Op1 && j != 1) || (set == OperatorSet::Op2 && j != 2)) continue;
    const double p = s.op(j).power_p;
    for (const auto& b : net.op(j)) {
      out.push_back({path_loss(b.distance, b.state, s.path_loss), p, b.fading, j});
    }
  }
}

struct MeanStd {
  double mean;
  double stderr_;
};

MeanStd summarize(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / n;
  if (v.size() < 2) return {mean, std::numeric_limits<double>::infinity()};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace

void SimConfig::validate() const {
  if (!(window_radius >= 0.0) || !std::isfinite(window_radius)) {
    throw ValidationError("sim.window_radius_m", "must be non-negative (0 = automatic)");
  }
  if (num_realizations < 1) throw ValidationError("sim.realizations", "must be >= 1");
}

double default_window_radius(const Scenario& s) {
  double lambda = std::numeric_limits<double>::infinity();
  for (int j = 1; j <= 2; ++j) {
    if (s.op(j).density_lambda > 0.0) lambda = std::min(lambda, s.op(j).density_lambda);
  }
  if (!std::isfinite(lambda)) return 1.0;
  return kWindowNeighbourMultiple / (2.0 * std::sqrt(lambda));
}

double resolved_window_radius(const Scenario& s, const SimConfig& sim) {
  return sim.window_radius > 0.0 ? sim.window_radius : default_window_radius(s);
}

NetworkRealization sample_network(const Scenario& s, const SimConfig& sim,
                                  std::uint64_t replicate_index) {
  const double radius = resolved_window_radius(s, sim);
  NetworkRealization net;
  net.op1 = sample_operator(s.op1, s.link_state, radius, stream_seed(sim.rng_seed, replicate_index, 1));
  net.op2 = sample_operator(s.op2, s.link_state, radius, stream_seed(sim.rng_seed, replicate_index, 2));
  return net;
}

std::optional<double> min_pathloss(const NetworkRealization& net, OperatorSet set,
                                   const PathLossParams& p) {
  std::optional<double> best;
  for (int j = 1; j <= 2; ++j) {
    if ((set == OperatorSet::Op1 && j != 1) || (set == OperatorSet::Op2 && j != 2)) continue;
    for (const auto& b : net.op(j)) {
      const double l = path_loss(b.distance, b.state, p);
      if (!best || l < *best) best = l;
    }
  }
  return best;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

OperatorSet operator_set(SimMode mode) {
  return mode == SimMode::NonsharingOp1   ? OperatorSet::Op1
         : mode == SimMode::NonsharingOp2 ? OperatorSet::Op2
                                          : OperatorSet::Union;
}

RealizationRate realization_rate(const NetworkRealization& net, const Scenario& s, SimMode mode,
                                 const RateOptions& opt) {
  thread_local std::vector<Interferer> pts;
  collect(net, operator_set(mode), s, pts);
  if (pts.empty()) return {};
  std::size_t best = 0;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    if (pts[k].path_loss < pts[best].path_loss) best = k;
  }
  double interference = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (k != best) interference += pts[k].power * pts[k].fading / pts[k].path_loss;
  }
  const auto& srv = pts[best];
  const double signal = srv.power * srv.fading / srv.path_loss;
  const double noise = serving_noise(s, srv.op, mode == SimMode::Sharing, opt);
  return {std::log2(1.0 + signal / (interference + noise)), srv.op};
}

RateEstimate estimate_rate(const Scenario& s, const SimConfig& sim, SimMode mode,
                           const RateOptions& opt) {
  s.validate();
  sim.validate();
  const std::size_t n = sim.num_realizations;

  std::vector<double> rate(n, 0.0);
  std::vector<int> served_by(n, 0);
  parallel_for(n, sim.threads, [&](std::size_t i) {
    const auto r = realization_rate(sample_network(s, sim, i), s, mode, opt);
    rate[i] = r.rate_bit_s_hz;
    served_by[i] = r.serving_operator;
  });

  RateEstimate est;
  est.realizations = n;
  const auto all = summarize(rate);
  est.mean_rate_bit_s_hz = all.mean;
  est.stderr_bit_s_hz = all.stderr_;
  std::size_t uncovered = 0;
  std::vector<double> split(n);
  for (int j = 1; j <= 2; ++j) {
    for (std::size_t i = 0; i < n; ++i) split[i] = served_by[i] == j ? rate[i] : 0.0;
    const auto m = summarize(split);
    est.by_serving_operator[j - 1] = m.mean;
    est.by_serving_operator_stderr[j - 1] = m.stderr_;
  }
  for (int b : served_by) uncovered += b == 0 ? 1 : 0;
  est.no_coverage_fraction = static_cast<double>(uncovered) / static_cast<double>(n);
  return est;
}

MinPathlossSample sample_min_pathloss(const Scenario& s, const SimConfig& sim, OperatorSet set) {
  sim.validate();
  MinPathlossSample out;
  out.values.assign(sim.num_realizations, std::numeric_limits<double>::infinity());
  parallel_for(sim.num_realizations, sim.threads, [&](std::size_t i) {
    const auto m = min_pathloss(sample_network(s, sim, i), set, s.path_loss);
    if (m) out.values[i] = *m;
  });
  for (double v : out.values) out.no_coverage += std::isinf(v) ? 1 : 0;
  return out;
}

MgfEstimate estimate_interference_mgf(const Scenario& s, const SimConfig& sim, double z, double x,
                                      OperatorSet set) {
  sim.validate();
  if (!(z >= 0.0) || !(x > 0.0)) throw DomainError("estimate_interference_mgf: need z >= 0, x > 0");
  struct FarField {
    double density, r1, weight;
    LinkState state;
    int op;
  };
  std::vector<FarField> far;
  double tail_log = 0.0;
  const double window = resolved_window_radius(s, sim);
  if (sim.window_radius == 0.0 && z > 0.0 && window >= s.link_state.ball_radius_d) {
    const double parts = set == OperatorSet::Union ? 4.0 : 2.0;
    for (int j = 1; j <= 2; ++j) {
      if ((set == OperatorSet::Op1 && j != 1) || (set == OperatorSet::Op2 && j != 2)) continue;
      const double weight = set == OperatorSet::Union ? s.op(j).power_p : 1.0;
      for (LinkState st : {LinkState::Los, LinkState::Nlos}) {
        const double density = s.op(j).density_lambda * s.link_state.q(st, false);
        if (density == 0.0 || weight == 0.0) continue;
        // Every tail point must lie outside the exclusion region.
        const double r_excl = std::pow(x / s.path_loss.k, 1.0 / s.path_loss.alpha(st));
        const double r1 = tail_radius(density, weight * z, st, s.path_loss, std::max(window, r_excl),
                                      kFarFieldLogTolerance / parts);
        tail_log += tail_mean(density, weight * z, r1, st, s.path_loss);
        far.push_back({density, r1, weight, st, j});
      }
    }
  }
  std::vector<double> vals(sim.num_realizations, 1.0);
  parallel_for(sim.num_realizations, sim.threads, [&](std::size_t i) {
    const auto net = sample_network(s, sim, i);
    std::vector<Interferer> pts;
    collect(net, set, s, pts);
    double interference = 0.0;
    for (const auto& p : pts) {
      if (p.path_loss < x) continue;
      const double weight = set == OperatorSet::Union ? p.power : 1.0;
      interference += weight * p.fading / p.path_loss;
    }
    for (const auto& f : far) {
      const std::uint64_t seed =
          splitmix64(stream_seed(sim.rng_seed, i, f.op) ^ (f.state == LinkState::Los ? 0x4c4f53 : 0x4e4c4f53));
      interference += f.weight * annulus_interference(f.density, window, f.r1, f.state, s.path_loss, x, seed);
    }
    vals[i] = std::exp(-z * interference - tail_log);
  });
  const auto m = summarize(vals);
  return {m.mean, m.stderr_};
}

double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw DomainError("ks_distance: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (std::isinf(sample[i])) {
      // Remaining mass sits at +inf; compare against the CDF's supremum.
      const double f_inf = cdf(std::numeric_limits<double>::max());
      d = std::max(d, std::abs(static_cast<double>(i) / n - f_inf));
      break;
    }
    const double f = cdf(sample[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace netshare
