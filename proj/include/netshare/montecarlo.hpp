#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "netshare/rate.hpp"
#include "netshare/scenario.hpp"

namespace netshare {

enum class FadingModel { RayleighUnit };

struct SimConfig {
  double window_radius = 0.0;  // meters; 0 selects default_window_radius()
  std::size_t num_realizations = 10'000;
  std::uint64_t rng_seed = 1;
  FadingModel fading_model = FadingModel::RayleighUnit;
  unsigned threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

/// Multiple of the mean nearest-neighbour distance used for the default window.
inline constexpr double kWindowNeighbourMultiple = 50.0;

/// kWindowNeighbourMultiple / (2 sqrt(lambda)) for the sparsest deployed operator.
double default_window_radius(const Scenario& s);
double resolved_window_radius(const Scenario& s, const SimConfig& sim);

struct BsPoint {
  double distance;  // meters from the typical MT at the origin
  LinkState state;
  double fading;    // power gain, unit-mean exponential
};

/// One draw of both operators' BS processes inside the simulation disc.
/// Points are generated in order of increasing distance, so enlarging the
/// window only appends points to a replicate.
struct NetworkRealization {
  std::vector<BsPoint> op1;
  std::vector<BsPoint> op2;

  const std::vector<BsPoint>& op(int index) const { return index == 1 ? op1 : op2; }
};

NetworkRealization sample_network(const Scenario& s, const SimConfig& sim,
                                  std::uint64_t replicate_index);

enum class OperatorSet { Op1, Op2, Union };

/// Smallest path loss over the chosen set; empty when the set has no BS.
std::optional<double> min_pathloss(const NetworkRealization& net, OperatorSet set,
                                   const PathLossParams& p);

enum class SimMode { NonsharingOp1, NonsharingOp2, Sharing };

struct RateEstimate {
  double mean_rate_bit_s_hz = 0.0;
  double stderr_bit_s_hz = 0.0;
  double no_coverage_fraction = 0.0;
  /// Mean rate split by serving operator (the sharing counterparts of the
  /// per-operator analytic components; for non-sharing only one entry is used).
  std::array<double, 2> by_serving_operator{0.0, 0.0};
  std::array<double, 2> by_serving_operator_stderr{0.0, 0.0};
  std::size_t realizations = 0;
};

OperatorSet operator_set(SimMode mode);

// Rate of the typical MT in one realization; serving_operator is 0 without coverage.
struct RealizationRate {
  double rate_bit_s_hz = 0.0;
  int serving_operator = 0;
};

RealizationRate realization_rate(const NetworkRealization& net, const Scenario& s, SimMode mode,
                                 const RateOptions& opt = {});

RateEstimate estimate_rate(const Scenario& s, const SimConfig& sim, SimMode mode,
                           const RateOptions& opt = {});

struct MinPathlossSample {
  std::vector<double> values;  // +inf marks a replicate without any BS in the set
  std::size_t no_coverage = 0;
};

MinPathlossSample sample_min_pathloss(const Scenario& s, const SimConfig& sim, OperatorSet set);

/// Bound on the log-MGF error of the far-field tail replacement.
inline constexpr double kFarFieldLogTolerance = 2e-3;

struct MgfEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

/// Empirical E[exp(-z I)] where I sums fading / path loss over interferers
/// with path loss >= x. Single-operator sets use unit power (the quantity of
/// mgf_nonsharing); the union weights each BS by its operator's power (the
/// quantity of mgf_sharing).
/// With the automatic window, beyond-window interferers are sampled per link
/// state (outside the LOS ball the process is an independent LOS/NLOS
/// thinning) out to a radius past which the remaining tail enters through its
/// mean, z E[I_tail]. That radius keeps the error of the mean replacement
/// below kFarFieldLogTolerance in -log E[exp(-z I)].
MgfEstimate estimate_interference_mgf(const Scenario& s, const SimConfig& sim, double z, double x,
                                      OperatorSet set);

/// Kolmogorov-Smirnov distance between a sample (may contain +inf) and a CDF.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Runs fn(i) for i in [0, n) on `threads` workers (0 = hardware concurrency).
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace netshare
