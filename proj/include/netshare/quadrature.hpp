#pragma once

#include <functional>

namespace netshare {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  int evaluations = 0;
  bool converged = true;
};

/// Globally adaptive 21-point Gauss-Kronrod quadrature on the finite
/// interval [a, b]. Bisects the interval with the largest error estimate
/// until the total estimate is below max(abs_tol, rel_tol * |value|) or
/// max_intervals is reached (then `converged` is false).
QuadratureResult integrate_gk21(const std::function<double(double)>& f, double a, double b,
                                double rel_tol, double abs_tol, int max_intervals);

}  // namespace netshare
