#pragma once

#include <optional>
#include <string>

#include "netshare/scenario.hpp"

namespace netshare {

struct QuadratureConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-300;
  int max_subdivisions = 400;
  /// Probability mass of the smallest path loss kept by the outer integral;
  /// the void probability exp(-Lambda) at the truncation point is 1 - quantile.
  double outer_truncation_quantile = 1.0 - 1e-12;

  void validate() const;
};

/// Which bandwidth sets the receiver noise when operators share spectrum.
enum class NoiseBandwidth { PerOperator, Combined };

std::string to_string(NoiseBandwidth nb);
NoiseBandwidth noise_bandwidth_from_string(const std::string& s);

struct RateOptions {
  NoiseBandwidth sharing_noise_bandwidth = NoiseBandwidth::PerOperator;
  /// Replaces every computed noise power (watts) when set; used for
  /// interference-limited studies.
  std::optional<double> noise_override_w;
};

/// Noise power seen by an MT served by `operator_index`.
double serving_noise(const Scenario& s, int operator_index, bool sharing, const RateOptions& opt);

struct RateDiagnostics {
  double error_estimate = 0.0;  // bit/s/Hz
  double x_lower = 0.0;         // outer integration limits (path-loss values)
  double x_upper = 0.0;
  int outer_intervals = 0;
  long inner_evaluations = 0;
  double inner_max_rel_error = 0.0;
  long inner_truncations = 0;  // inner integrals cut at the upper cap
  long mgf_clamps = 0;
};

/// Inner integral of the non-sharing rate: the MGF-based conditional
/// ergodic capacity (in nats) of an MT served at path loss x by its own
/// operator.
double j_bar(double x, int operator_index, const Scenario& s, const QuadratureConfig& qc,
             const RateOptions& opt = {});

/// Same for the sharing setup: interference from both operators.
double j_tilde(double x, int operator_index, const Scenario& s, const QuadratureConfig& qc,
               const RateOptions& opt = {});

/// Average spectral efficiency (bit/s/Hz) of the typical MT of operator i
/// without sharing.
double rate_nonsharing(int operator_index, const Scenario& s, const QuadratureConfig& qc,
                       const RateOptions& opt = {}, RateDiagnostics* diag = nullptr);

/// Contribution (bit/s/Hz) of BSs of operator i to the typical MT's average
/// spectral efficiency under spectrum and infrastructure sharing.
double rate_sharing(int operator_index, const Scenario& s, const QuadratureConfig& qc,
                    const RateOptions& opt = {}, RateDiagnostics* diag = nullptr);

struct RateReport {
  double r_bar_1 = 0.0;
  double r_bar_2 = 0.0;
  double r_tilde_1 = 0.0;
  double r_tilde_2 = 0.0;
  double r_nsh = 0.0;  // bit/s
  double r_sh = 0.0;   // bit/s
  // Quadrature error estimates of the four spectral efficiencies.
  double err_r_bar_1 = 0.0;
  double err_r_bar_2 = 0.0;
  double err_r_tilde_1 = 0.0;
  double err_r_tilde_2 = 0.0;

  bool operator==(const RateReport&) const = default;
};

/// Which aggregate(s) to compute; skipping one halves the work in sweeps.
enum class Setup { NonSharing, Sharing, Both };

RateReport aggregate_rates(const Scenario& s, const QuadratureConfig& qc,
                           const RateOptions& opt = {}, Setup setup = Setup::Both);

}  // namespace netshare
