#include "netshare/intensity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "netshare/errors.hpp"

namespace netshare {

namespace {

constexpr double kPi = std::numbers::pi;

double scaled_power(double x, const IntensityContext& ctx, LinkState state) {
  return std::pow(x / ctx.path_loss.k, 2.0 / ctx.path_loss.alpha(state));
}

}  // namespace

IntensityContext IntensityContext::of(const Scenario& s, int operator_index) {
  return {s.op(operator_index).density_lambda, s.link_state, s.path_loss};
}

double IntensityContext::breakpoint(LinkState s) const {
  return path_loss.k * std::pow(link_state.ball_radius_d, path_loss.alpha(s));
}

namespace detail {

double measure_inner_branch(double x, const IntensityContext& ctx, LinkState state) {
  return kPi * ctx.density_lambda * ctx.link_state.q(state, true) * scaled_power(x, ctx, state);
}

double measure_outer_branch(double x, const IntensityContext& ctx, LinkState state) {
  const double d2 = ctx.link_state.ball_radius_d * ctx.link_state.ball_radius_d;
  const double q_in = ctx.link_state.q(state, true);
  const double q_out = ctx.link_state.q(state, false);
  return kPi * ctx.density_lambda * (d2 * (q_in - q_out) + q_out * scaled_power(x, ctx, state));
}

}  // namespace detail

double intensity_measure_state(double x, const IntensityContext& ctx, LinkState state) {
  if (!(x >= 0.0)) throw DomainError("intensity_measure_state: x must be non-negative");
  if (x == 0.0 || ctx.density_lambda == 0.0) return 0.0;
  return x < ctx.breakpoint(state) ? detail::measure_inner_branch(x, ctx, state)
                                   : detail::measure_outer_branch(x, ctx, state);
}

double intensity_density_state(double x, const IntensityContext& ctx, LinkState state) {
  if (!(x > 0.0)) throw DomainError("intensity_density_state: x must be positive");
  if (ctx.density_lambda == 0.0) return 0.0;
  const double alpha = ctx.path_loss.alpha(state);
  const bool inner = x < ctx.breakpoint(state);
  return 2.0 * kPi * ctx.density_lambda / (x * alpha) * scaled_power(x, ctx, state) *
         ctx.link_state.q(state, inner);
}

double intensity_measure_total(double x, const IntensityContext& ctx) {
  return intensity_measure_state(x, ctx, LinkState::Los) +
         intensity_measure_state(x, ctx, LinkState::Nlos);
}

double intensity_density_total(double x, const IntensityContext& ctx) {
  return intensity_density_state(x, ctx, LinkState::Los) +
         intensity_density_state(x, ctx, LinkState::Nlos);
}

double cdf_min_pathloss(double x, const IntensityContext& ctx) {
  return -std::expm1(-intensity_measure_total(x, ctx));
}

double pdf_min_pathloss(double x, const IntensityContext& ctx) {
  return intensity_density_total(x, ctx) * std::exp(-intensity_measure_total(x, ctx));
}

double intensity_measure_limit(const IntensityContext& ctx) {
  if (ctx.density_lambda == 0.0) return 0.0;
  const auto& ls = ctx.link_state;
  if (ls.q(LinkState::Los, false) > 0.0 || ls.q(LinkState::Nlos, false) > 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  // Only inner-ball BSs exist: the plateau is pi lambda D^2 (q_LOS + q_NLOS).
  return kPi * ctx.density_lambda * ls.ball_radius_d * ls.ball_radius_d;
}

double intensity_measure_inverse(double target, const IntensityContext* ctxs, int count) {
  if (!(target > 0.0)) throw DomainError("intensity_measure_inverse: target must be positive");
  auto measure = [&](double x) {
    double m = 0.0;
    for (int i = 0; i < count; ++i) m += intensity_measure_total(x, ctxs[i]);
    return m;
  };
  double limit = 0.0;
  for (int i = 0; i < count; ++i) limit += intensity_measure_limit(ctxs[i]);
  if (!(target < limit)) {
    throw DomainError("intensity_measure_inverse: target exceeds the measure's limit");
  }
  // Bracket in log space, then bisect.
  double lo = std::log(ctxs[0].path_loss.k);
  double hi = lo;
  while (measure(std::exp(lo)) >= target) lo -= 8.0;
  while (measure(std::exp(hi)) < target) hi += 8.0;
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (measure(std::exp(mid)) < target ? lo : hi) = mid;
  }
  return std::exp(hi);
}

}  // namespace netshare
