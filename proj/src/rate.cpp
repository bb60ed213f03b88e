#include "netshare/rate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "netshare/errors.hpp"
#include "netshare/intensity.hpp"
#include "netshare/interference.hpp"
#include "netshare/quadrature.hpp"

namespace netshare {

namespace {

// Mass of L0 below the outer integral's lower limit.
constexpr double kLowerMass = 1e-15;
// The inner integrand is negligible once its log drops below this.
constexpr double kInnerLogCut = -46.0;
// Cap on log(y) for the inner integral; reached only without noise and interference.
constexpr double kInnerLogCap = 230.0;
constexpr double kInnerStep = 2.0;

struct InnerProblem {
  const InterferenceModel* model;
  int serving;
  bool sharing;
  double p1;
  double p2;
  double noise;
};

struct InnerResult {
  double value = 0.0;
  double rel_error = 0.0;
  bool truncated = false;
  long evaluations = 0;
};

// J(x) = int_0^inf P e^{-z} / (P z + sigma^2 x) MGF_I(z / sigma^2; x) dz after the
// substitution z = sigma^2 x y / P, integrated over v = ln y:
//   J(x) = int y / (1 + y) MGF_I(x y / P) exp(-y sigma^2 x / P) dv.
// The substituted form stays well defined when sigma^2 -> 0.
InnerResult inner_integral(const InnerProblem& pr, double x, const QuadratureConfig& qc,
                           MgfDiagnostics* md) {
  InnerResult out;
  const double p_serving = pr.serving == 1 ? pr.p1 : pr.p2;
  if (p_serving == 0.0) return out;
  const double s_per_y = x / p_serving;
  const double noise_coeff = pr.noise * x / p_serving;

  auto log_weight = [&](double y) {
    const double s = y * s_per_y;
    double lm = 0.0;
    if (pr.sharing) {
      lm = pr.model->log_operator(1, pr.p1 * s, x, md) + pr.model->log_operator(2, pr.p2 * s, x, md);
    } else {
      lm = pr.model->log_operator(pr.serving, p_serving * s, x, md);
    }
    return lm - y * noise_coeff;
  };
  auto integrand = [&](double v) {
    const double y = std::exp(v);
    return y / (1.0 + y) * std::exp(log_weight(y));
  };

  double v_hi = 0.0;
  while (log_weight(std::exp(v_hi)) > kInnerLogCut && v_hi < kInnerLogCap) v_hi += kInnerStep;
  out.truncated = v_hi >= kInnerLogCap;
  double v_ref = 0.0;
  while (log_weight(std::exp(v_ref)) < -1.0 && v_ref > -kInnerLogCap) v_ref -= kInnerStep;
  const double v_lo = v_ref - 40.0;

  const auto q = integrate_gk21(integrand, v_lo, v_hi, qc.rel_tol, qc.abs_tol, qc.max_subdivisions);
  if (!q.converged) {
    throw NumericalError("inner rate integral", "adaptive quadrature did not converge", q.error);
  }
  out.value = q.value;
  out.rel_error = q.value > 0.0 ? q.error / q.value : q.error;
  out.evaluations = q.evaluations;
  return out;
}

InnerProblem make_inner(const InterferenceModel& model, const Scenario& s, int serving,
                        bool sharing, const RateOptions& opt) {
  return {&model, serving, sharing, s.op1.power_p, s.op2.power_p,
          serving_noise(s, serving, sharing, opt)};
}

void check_index(int i) {
  if (i != 1 && i != 2) throw DomainError("operator index must be 1 or 2");
}

double outer_rate(int serving, const Scenario& s, bool sharing, const QuadratureConfig& qc,
                  const RateOptions& opt, RateDiagnostics* diag) {
  check_index(serving);
  qc.validate();
  const auto& op = s.op(serving);
  if (op.density_lambda == 0.0 || op.power_p == 0.0) {
    if (diag) *diag = {};
    return 0.0;
  }
  const IntensityContext ctx1 = IntensityContext::of(s, 1);
  const IntensityContext ctx2 = IntensityContext::of(s, 2);
  const IntensityContext& ctx_i = serving == 1 ? ctx1 : ctx2;
  const IntensityContext ctx_pair[2] = {ctx1, ctx2};
  const IntensityContext* void_ctxs = sharing ? ctx_pair : &ctx_i;
  const int void_count = sharing ? 2 : 1;

  auto measure = [&](double x) {
    if (!sharing) return intensity_measure_total(x, ctx_i);
    return intensity_measure_total(x, ctx1) + intensity_measure_total(x, ctx2);
  };

  double limit = 0.0;
  for (int k = 0; k < void_count; ++k) limit += intensity_measure_limit(void_ctxs[k]);
  const double bp_los = ctx_i.breakpoint(LinkState::Los);
  const double bp_nlos = ctx_i.breakpoint(LinkState::Nlos);
  const double upper_target = -std::log1p(-qc.outer_truncation_quantile);

  const double x_lo = intensity_measure_inverse(std::min(kLowerMass, 0.5 * limit), void_ctxs, void_count);
  double x_hi = limit > upper_target ? intensity_measure_inverse(upper_target, void_ctxs, void_count)
                                     : std::numeric_limits<double>::infinity();
  const auto& ls = s.link_state;
  if (ls.q(LinkState::Los, false) == 0.0 && ls.q(LinkState::Nlos, false) == 0.0) {
    // No serving BS beyond the ball: the density vanishes past the last breakpoint.
    x_hi = std::min(x_hi, std::max(bp_los, bp_nlos));
  }
  if (!std::isfinite(x_hi)) {
    throw NumericalError("outer rate integral", "could not bound the serving path loss");
  }

  const InterferenceModel model(s);
  const InnerProblem inner = make_inner(model, s, serving, sharing, opt);
  MgfDiagnostics md;
  RateDiagnostics d;
  d.x_lower = x_lo;
  d.x_upper = x_hi;

  auto integrand = [&](double w) {
    const double x = std::exp(w);
    const double dens = intensity_density_total(x, ctx_i);
    if (dens == 0.0) return 0.0;
    const double void_prob = std::exp(-measure(x));
    if (void_prob == 0.0) return 0.0;
    const InnerResult j = inner_integral(inner, x, qc, &md);
    d.inner_evaluations += j.evaluations;
    d.inner_max_rel_error = std::max(d.inner_max_rel_error, j.rel_error);
    if (j.truncated) ++d.inner_truncations;
    return x * j.value * void_prob * dens;
  };

  std::vector<double> cuts = {std::log(x_lo), std::log(x_hi)};
  for (double bp : {bp_los, bp_nlos}) {
    const double w = std::log(bp);
    if (w > cuts.front() && w < cuts.back()) cuts.push_back(w);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double value = 0.0;
  double error = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const auto q = integrate_gk21(integrand, cuts[k], cuts[k + 1], qc.rel_tol, qc.abs_tol,
                                  qc.max_subdivisions);
    if (!q.converged) {
      throw NumericalError("outer rate integral", "adaptive quadrature did not converge", q.error);
    }
    value += q.value;
    error += q.error;
    d.outer_intervals += q.intervals;
  }
  value /= std::numbers::ln2;
  d.error_estimate = error / std::numbers::ln2 + d.inner_max_rel_error * value;
  d.mgf_clamps = md.clamped_exponents;
  if (diag) *diag = d;
  return value;
}

double inner_public(double x, int i, const Scenario& s, bool sharing, const QuadratureConfig& qc,
                    const RateOptions& opt) {
  check_index(i);
  if (!(x > 0.0)) throw DomainError("J(x): x must be positive");
  const InterferenceModel model(s);
  MgfDiagnostics md;
  return inner_integral(make_inner(model, s, i, sharing, opt), x, qc, &md).value;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw ValidationError("quadrature.rel_tol", "must lie in (0, 1)");
  if (!(abs_tol > 0.0)) throw ValidationError("quadrature.abs_tol", "must be positive");
  if (max_subdivisions < 1) throw ValidationError("quadrature.max_subdivisions", "must be >= 1");
  if (!(outer_truncation_quantile > 0.9999 && outer_truncation_quantile < 1.0)) {
    throw ValidationError("quadrature.outer_truncation_quantile", "must lie in (0.9999, 1)");
  }
}

std::string to_string(NoiseBandwidth nb) {
  return nb == NoiseBandwidth::PerOperator ? "per_operator" : "combined";
}

NoiseBandwidth noise_bandwidth_from_string(const std::string& s) {
  if (s == "per_operator") return NoiseBandwidth::PerOperator;
  if (s == "combined") return NoiseBandwidth::Combined;
  throw ValidationError("rate.sharing_noise_bandwidth", "expected per_operator or combined");
}

double serving_noise(const Scenario& s, int operator_index, bool sharing, const RateOptions& opt) {
  if (opt.noise_override_w) return *opt.noise_override_w;
  const auto& op = s.op(operator_index);
  const double w = sharing && opt.sharing_noise_bandwidth == NoiseBandwidth::Combined
                       ? s.op1.bandwidth_w + s.op2.bandwidth_w
                       : op.bandwidth_w;
  return w > 0.0 ? noise_power(w, op.noise_figure_nf) : 0.0;
}

double j_bar(double x, int operator_index, const Scenario& s, const QuadratureConfig& qc,
             const RateOptions& opt) {
  return inner_public(x, operator_index, s, false, qc, opt);
}

double j_tilde(double x, int operator_index, const Scenario& s, const QuadratureConfig& qc,
               const RateOptions& opt) {
  return inner_public(x, operator_index, s, true, qc, opt);
}

double rate_nonsharing(int operator_index, const Scenario& s, const QuadratureConfig& qc,
                       const RateOptions& opt, RateDiagnostics* diag) {
  return outer_rate(operator_index, s, false, qc, opt, diag);
}

double rate_sharing(int operator_index, const Scenario& s, const QuadratureConfig& qc,
                    const RateOptions& opt, RateDiagnostics* diag) {
  return outer_rate(operator_index, s, true, qc, opt, diag);
}

RateReport aggregate_rates(const Scenario& s, const QuadratureConfig& qc, const RateOptions& opt,
                           Setup setup) {
  s.validate();
  RateReport r;
  auto run = [&](const char* name, auto&& fn, double& value, double& err) {
    RateDiagnostics d;
    try {
      value = fn(&d);
    } catch (const NumericalError& e) {
      throw NumericalError(name, e.what(), e.error_estimate());
    }
    err = d.error_estimate;
  };
  if (setup != Setup::Sharing) {
    run("r_bar_1", [&](RateDiagnostics* d) { return rate_nonsharing(1, s, qc, opt, d); }, r.r_bar_1, r.err_r_bar_1);
    run("r_bar_2", [&](RateDiagnostics* d) { return rate_nonsharing(2, s, qc, opt, d); }, r.r_bar_2, r.err_r_bar_2);
    r.r_nsh = s.op1.bandwidth_w * r.r_bar_1 + s.op2.bandwidth_w * r.r_bar_2;
  }
  if (setup != Setup::NonSharing) {
    run("r_tilde_1", [&](RateDiagnostics* d) { return rate_sharing(1, s, qc, opt, d); }, r.r_tilde_1, r.err_r_tilde_1);
    run("r_tilde_2", [&](RateDiagnostics* d) { return rate_sharing(2, s, qc, opt, d); }, r.r_tilde_2, r.err_r_tilde_2);
    r.r_sh = 2.0 * (s.op1.bandwidth_w + s.op2.bandwidth_w) * (r.r_tilde_1 + r.r_tilde_2);
  }
  return r;
}

}  // namespace netshare
