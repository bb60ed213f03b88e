#pragma once

#include <array>

#include "netshare/intensity.hpp"
#include "netshare/scenario.hpp"

namespace netshare {

/// Argument set for one MGF component. z is the Laplace variable applied to
/// the unit-power interference sum(g / L) of the interferers whose path loss
/// exceeds the serving value x.
struct MgfQuery {
  double z = 0.0;
  double x = 1.0;
  int operator_index = 1;
  LinkState state = LinkState::Los;
};

/// Counters filled by the MGF routines when an exponent had to be clamped.
struct MgfDiagnostics {
  long clamped_exponents = 0;
};

/// Exponents below this value are clamped (exp underflows well before).
inline constexpr double kMinLogMgf = -700.0;

/// log of one component MGF (LOS or NLOS interferers of one operator).
double log_mgf_component(double z, double x, LinkState state, const IntensityContext& ctx,
                         MgfDiagnostics* diag = nullptr);

/// E[exp(-z I_S)] for the state-S interferers of one operator. Value in (0, 1].
double mgf_component(const MgfQuery& q, const Scenario& s, MgfDiagnostics* diag = nullptr);
double mgf_component(double z, double x, LinkState state, const IntensityContext& ctx,
                     MgfDiagnostics* diag = nullptr);

/// Log-domain products. The summed exponent is clamped at kMinLogMgf.
double log_mgf_nonsharing(double z, double x, int operator_index, const Scenario& s,
                          MgfDiagnostics* diag = nullptr);
double log_mgf_sharing(double z, double x, const Scenario& s, MgfDiagnostics* diag = nullptr);

/// LOS x NLOS product for the given operator.
double mgf_nonsharing(double z, double x, int operator_index, const Scenario& s,
                      MgfDiagnostics* diag = nullptr);

/// Four-factor product with per-operator power scaling P_j z.
double mgf_sharing(double z, double x, const Scenario& s, MgfDiagnostics* diag = nullptr);

/// Precomputed form of the interference exponent for fast repeated evaluation
/// inside the rate integrals. log_operator(j, z, x) equals
/// log_mgf_component(z, x, LOS) + log_mgf_component(z, x, NLOS) for operator j.
class InterferenceModel {
 public:
  explicit InterferenceModel(const Scenario& s);

  double log_operator(int operator_index, double z, double x, MgfDiagnostics* diag = nullptr) const;

 private:
  struct StateTerms {
    double alpha;
    double delta;
    double breakpoint;
    double q_inner;
    double q_outer;
    double inv_k_pow_delta;  // k^{-delta}
  };
  struct OperatorTerms {
    double pi_lambda;
    double d2;
    std::array<StateTerms, 2> states;
  };

  double log_state(const OperatorTerms& op, const StateTerms& st, double z, double x,
                   MgfDiagnostics* diag) const;

  std::array<OperatorTerms, 2> ops_;
};

}  // namespace netshare
