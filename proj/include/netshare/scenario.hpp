#pragma once

#include <string_view>

namespace netshare {

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s
inline constexpr double kThermalNoiseDensityDbmHz = -174.0;

enum class LinkState { Los, Nlos };

std::string_view to_string(LinkState s);

/// Two-ball LOS/NLOS link-state table: one LOS probability inside the ball of
/// radius D, another outside. NLOS probabilities are the complements.
struct LinkStateModel {
  double q_los_inner = 0.0;
  double q_los_outer = 0.0;
  double ball_radius_d = 1.0;  // meters

  /// Probability that a link of the given state lies inside (or outside) the ball.
  double q(LinkState s, bool inner) const {
    const double los = inner ? q_los_inner : q_los_outer;
    return s == LinkState::Los ? los : 1.0 - los;
  }

  void validate() const;
};

struct PathLossParams {
  double k = 1.0;
  double alpha_los = 2.5;
  double alpha_nlos = 3.5;

  double alpha(LinkState s) const { return s == LinkState::Los ? alpha_los : alpha_nlos; }

  /// `require_ordered` enforces alpha_nlos >= alpha_los.
  void validate(bool require_ordered = true) const;
};

/// One operator's deployment. Zero density, bandwidth or power describe an
/// inactive operator and are accepted; negative or non-finite values are not.
struct OperatorParams {
  double density_lambda = 0.0;  // BS per m^2
  double bandwidth_w = 0.0;     // Hz
  double power_p = 0.0;         // W
  double noise_figure_nf = 0.0; // dB

  bool active() const { return density_lambda > 0.0 && bandwidth_w > 0.0 && power_p > 0.0; }
  void validate(std::string_view prefix) const;
};

struct Scenario {
  OperatorParams op1;
  OperatorParams op2;
  LinkStateModel link_state;
  PathLossParams path_loss;
  double carrier_freq_fc = 2.1e9;  // Hz

  /// 1-based operator access.
  const OperatorParams& op(int index) const;
  OperatorParams& op(int index);

  /// Operators 1 and 2 exchanged.
  Scenario swapped() const;

  void validate() const;
};

/// k * r^alpha for the given link state.
double path_loss(double r, LinkState state, const PathLossParams& p);

/// LOS probability of a link of length r; r == D belongs to the outer region.
double link_state_prob(double r, const LinkStateModel& m);

/// Free-space reference constant (4 pi fc / c)^2.
double pathloss_constant(double fc);

/// Thermal noise power in watts: -174 dBm/Hz + 10 log10(w) + nf.
double noise_power(double w, double nf);

}  // namespace netshare
