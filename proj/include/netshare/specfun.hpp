#pragma once

#include <cstddef>

namespace netshare {

/// Parameters of the Gauss hypergeometric function as it appears in the
/// interference MGF: 2F1(-2/alpha, 1; 1 - 2/alpha; w).
struct HypergeomParams {
  double a;
  double b;
  double c;
  double w;

  static HypergeomParams interference(double alpha, double w);
};

/// Truncated Gauss series sum_{n < nmax} (a)_n (b)_n / (c)_n w^n / n!.
/// Requires |w| < 1 and c not a non-positive integer. Uses compensated
/// summation so long truncations stay accurate.
double hyp2f1_series(double a, double b, double c, double w, std::size_t nmax);

/// 2F1(-2/alpha, 1; 1 - 2/alpha; w) for alpha > 2 and w <= 0.
///
/// |w| <= 0.5 sums the Gauss series directly; 0.5 < |w| <= 2 goes through the
/// Pfaff transformation w -> w/(w-1); |w| > 2 uses the expansion in 1/w that
/// follows from the Euler-type integral for this parameter family.
double hyp2f1_interference(double alpha, double w);

/// hyp2f1_interference(alpha, w) - 1, computed without cancellation for small |w|.
double hyp2f1_interference_minus_one(double alpha, double w);

}  // namespace netshare
