#include "netshare/interference.hpp"

#include <cmath>
#include <numbers>

#include "netshare/errors.hpp"
#include "netshare/specfun.hpp"

namespace netshare {

namespace {

double guard(double exponent, MgfDiagnostics* diag) {
  if (!std::isfinite(exponent)) {
    throw NumericalError("interference MGF", "non-finite exponent");
  }
  // Rounding can push an exact zero slightly positive.
  if (exponent > 0.0) return 0.0;
  if (exponent < kMinLogMgf) {
    if (diag) ++diag->clamped_exponents;
    return kMinLogMgf;
  }
  return exponent;
}

void check_query(double z, double x) {
  if (!(z >= 0.0)) throw DomainError("interference MGF: z must be non-negative");
  if (!(x > 0.0)) throw DomainError("interference MGF: x must be positive");
}

}  // namespace

double log_mgf_component(double z, double x, LinkState state, const IntensityContext& ctx,
                         MgfDiagnostics* diag) {
  check_query(z, x);
  if (z == 0.0 || ctx.density_lambda == 0.0) return 0.0;
  const double alpha = ctx.path_loss.alpha(state);
  const double delta = 2.0 / alpha;
  const double xb = ctx.breakpoint(state);
  const bool inner = x < xb;
  const double pi_lambda = std::numbers::pi * ctx.density_lambda;
  const double q_in = ctx.link_state.q(state, true);
  const double q_out = ctx.link_state.q(state, false);

  double exponent = pi_lambda * std::pow(ctx.path_loss.k, -delta) * std::pow(x, delta) *
                    (-hyp2f1_interference_minus_one(alpha, -z / x)) * (inner ? q_in : q_out);
  if (inner) {
    const double d2 = ctx.link_state.ball_radius_d * ctx.link_state.ball_radius_d;
    exponent += pi_lambda * (q_out - q_in) * d2 * (-hyp2f1_interference_minus_one(alpha, -z / xb));
  }
  return guard(exponent, diag);
}

double mgf_component(double z, double x, LinkState state, const IntensityContext& ctx,
                     MgfDiagnostics* diag) {
  return std::exp(log_mgf_component(z, x, state, ctx, diag));
}

double mgf_component(const MgfQuery& q, const Scenario& s, MgfDiagnostics* diag) {
  return mgf_component(q.z, q.x, q.state, IntensityContext::of(s, q.operator_index), diag);
}

double log_mgf_nonsharing(double z, double x, int operator_index, const Scenario& s,
                          MgfDiagnostics* diag) {
  const auto ctx = IntensityContext::of(s, operator_index);
  return guard(log_mgf_component(z, x, LinkState::Los, ctx, diag) +
                   log_mgf_component(z, x, LinkState::Nlos, ctx, diag),
               diag);
}

double log_mgf_sharing(double z, double x, const Scenario& s, MgfDiagnostics* diag) {
  check_query(z, x);
  return guard(log_mgf_nonsharing(s.op1.power_p * z, x, 1, s, diag) +
                   log_mgf_nonsharing(s.op2.power_p * z, x, 2, s, diag),
               diag);
}

double mgf_nonsharing(double z, double x, int operator_index, const Scenario& s,
                      MgfDiagnostics* diag) {
  return std::exp(log_mgf_nonsharing(z, x, operator_index, s, diag));
}

double mgf_sharing(double z, double x, const Scenario& s, MgfDiagnostics* diag) {
  return std::exp(log_mgf_sharing(z, x, s, diag));
}

InterferenceModel::InterferenceModel(const Scenario& s) {
  for (int j = 1; j <= 2; ++j) {
    const auto ctx = IntensityContext::of(s, j);
    auto& op = ops_[j - 1];
    op.pi_lambda = std::numbers::pi * ctx.density_lambda;
    op.d2 = ctx.link_state.ball_radius_d * ctx.link_state.ball_radius_d;
    for (LinkState st : {LinkState::Los, LinkState::Nlos}) {
      const double alpha = ctx.path_loss.alpha(st);
      const double delta = 2.0 / alpha;
      op.states[st == LinkState::Los ? 0 : 1] = {alpha,
                                                 delta,
                                                 ctx.breakpoint(st),
                                                 ctx.link_state.q(st, true),
                                                 ctx.link_state.q(st, false),
                                                 std::pow(ctx.path_loss.k, -delta)};
    }
  }
}

double InterferenceModel::log_state(const OperatorTerms& op, const StateTerms& st, double z,
                                    double x, MgfDiagnostics* diag) const {
  const bool inner = x < st.breakpoint;
  const double q = inner ? st.q_inner : st.q_outer;
  double exponent = 0.0;
  if (q != 0.0) {
    exponent = op.pi_lambda * st.inv_k_pow_delta * std::pow(x, st.delta) *
               (-hyp2f1_interference_minus_one(st.alpha, -z / x)) * q;
  }
  if (inner && st.q_outer != st.q_inner) {
    exponent += op.pi_lambda * (st.q_outer - st.q_inner) * op.d2 *
                (-hyp2f1_interference_minus_one(st.alpha, -z / st.breakpoint));
  }
  return guard(exponent, diag);
}

double InterferenceModel::log_operator(int operator_index, double z, double x,
                                       MgfDiagnostics* diag) const {
  check_query(z, x);
  const auto& op = ops_.at(operator_index - 1);
  if (z == 0.0 || op.pi_lambda == 0.0) return 0.0;
  return log_state(op, op.states[0], z, x, diag) + log_state(op, op.states[1], z, x, diag);
}

}  // namespace netshare
