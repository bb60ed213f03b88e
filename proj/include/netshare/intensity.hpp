#pragma once

#include "netshare/scenario.hpp"

namespace netshare {

/// Everything needed to describe the path-loss process of one operator's BSs.
struct IntensityContext {
  double density_lambda = 0.0;
  LinkStateModel link_state;
  PathLossParams path_loss;

  static IntensityContext of(const Scenario& s, int operator_index);

  /// Path-loss value k * D^alpha at which the state's intensity changes branch.
  double breakpoint(LinkState s) const;
};

/// Lambda_S([0, x)): mean number of state-S BSs with path loss below x.
double intensity_measure_state(double x, const IntensityContext& ctx, LinkState state);

/// Density of intensity_measure_state w.r.t. x. At the breakpoint the outer
/// branch is used.
double intensity_density_state(double x, const IntensityContext& ctx, LinkState state);

double intensity_measure_total(double x, const IntensityContext& ctx);
double intensity_density_total(double x, const IntensityContext& ctx);

/// Distribution of the smallest path loss L0 over one operator's BSs.
double cdf_min_pathloss(double x, const IntensityContext& ctx);
double pdf_min_pathloss(double x, const IntensityContext& ctx);

/// Limit of Lambda([0, x)) as x -> infinity; +inf unless both outer
/// probabilities vanish.
double intensity_measure_limit(const IntensityContext& ctx);

/// Smallest x with sum_i Lambda_i([0, x)) >= target, for target below the
/// combined limit. Works on any number of contexts (one operator or the union).
double intensity_measure_inverse(double target, const IntensityContext* ctxs, int count);

namespace detail {
// The two literal branches of the measure, exposed for the continuity check.
double measure_inner_branch(double x, const IntensityContext& ctx, LinkState state);
double measure_outer_branch(double x, const IntensityContext& ctx, LinkState state);
}  // namespace detail

}  // namespace netshare
