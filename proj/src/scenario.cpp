#include "netshare/scenario.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "netshare/errors.hpp"

namespace netshare {

namespace {

void require(bool ok, std::string_view field, const char* what) {
  if (!ok) throw ValidationError(std::string(field), what);
}

bool is_probability(double q) { return std::isfinite(q) && q >= 0.0 && q <= 1.0; }

}  // namespace

std::string_view to_string(LinkState s) { return s == LinkState::Los ? "LOS" : "NLOS"; }

void LinkStateModel::validate() const {
  require(is_probability(q_los_inner), "linkstate.q_los_inner", "must lie in [0, 1]");
  require(is_probability(q_los_outer), "linkstate.q_los_outer", "must lie in [0, 1]");
  require(std::isfinite(ball_radius_d) && ball_radius_d > 0.0, "linkstate.d_meters",
          "must be positive");
}

void PathLossParams::validate(bool require_ordered) const {
  require(std::isfinite(k) && k > 0.0, "pathloss.k", "must be positive");
  require(std::isfinite(alpha_los) && alpha_los > 2.0, "pathloss.alpha_los", "must exceed 2");
  require(std::isfinite(alpha_nlos) && alpha_nlos > 2.0, "pathloss.alpha_nlos", "must exceed 2");
  if (require_ordered) {
    require(alpha_nlos >= alpha_los, "pathloss.alpha_nlos", "must be >= pathloss.alpha_los");
  }
}

void OperatorParams::validate(std::string_view prefix) const {
  const std::string p(prefix);
  require(std::isfinite(density_lambda) && density_lambda >= 0.0, p + ".density_per_km2",
          "must be non-negative");
  require(std::isfinite(bandwidth_w) && bandwidth_w >= 0.0, p + ".bandwidth_hz",
          "must be non-negative");
  require(std::isfinite(power_p) && power_p >= 0.0, p + ".power_w", "must be non-negative");
  require(std::isfinite(noise_figure_nf) && noise_figure_nf >= 0.0, p + ".noise_figure_db",
          "must be non-negative");
}

const OperatorParams& Scenario::op(int index) const {
  if (index == 1) return op1;
  if (index == 2) return op2;
  throw DomainError("operator index must be 1 or 2");
}

OperatorParams& Scenario::op(int index) {
  return const_cast<OperatorParams&>(std::as_const(*this).op(index));
}

Scenario Scenario::swapped() const {
  Scenario s = *this;
  std::swap(s.op1, s.op2);
  return s;
}

void Scenario::validate() const {
  op1.validate("operator1");
  op2.validate("operator2");
  require(op1.active() || op2.active(), "operator1",
          "at least one operator needs positive density, bandwidth and power");
  link_state.validate();
  path_loss.validate();
  require(std::isfinite(carrier_freq_fc) && carrier_freq_fc > 0.0, "scenario.carrier_freq_hz",
          "must be positive");
}

double path_loss(double r, LinkState state, const PathLossParams& p) {
  if (!(r >= 0.0)) throw DomainError("path_loss: distance must be non-negative");
  if (r == 0.0) return 0.0;
  return p.k * std::pow(r, p.alpha(state));
}

double link_state_prob(double r, const LinkStateModel& m) {
  if (!(r >= 0.0)) throw DomainError("link_state_prob: distance must be non-negative");
  return r < m.ball_radius_d ? m.q_los_inner : m.q_los_outer;
}

double pathloss_constant(double fc) {
  if (!(fc > 0.0)) throw DomainError("pathloss_constant: carrier frequency must be positive");
  const double g = 4.0 * std::numbers::pi * fc / kSpeedOfLight;
  return g * g;
}

double noise_power(double w, double nf) {
  if (!(w > 0.0)) throw DomainError("noise_power: bandwidth must be positive");
  const double dbm = kThermalNoiseDensityDbmHz + 10.0 * std::log10(w) + nf;
  return std::pow(10.0, (dbm - 30.0) / 10.0);
}

}  // namespace netshare
