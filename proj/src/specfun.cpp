#include "netshare/specfun.hpp"

#include <cmath>
#include <numbers>

#include "netshare/errors.hpp"

namespace netshare {

namespace {

constexpr std::size_t kMaxTerms = 10'000;
constexpr double kTermTol = 1e-16;
constexpr double kDirectLimit = 0.5;
constexpr double kPfaffLimit = 2.0;

void check_interference_args(double alpha, double w) {
  if (!(alpha > 2.0) || !std::isfinite(alpha)) {
    throw DomainError("hyp2f1_interference: alpha must exceed 2");
  }
  if (!(w <= 0.0) || !std::isfinite(w)) {
    throw DomainError("hyp2f1_interference: argument must be finite and <= 0");
  }
}

// With c = a + 1 and b = 1 the coefficients collapse to (a)_n/(a+1)_n = a/(a+n),
// so F - 1 = -delta * sum_{n>=1} w^n / (n - delta).
double direct_minus_one(double delta, double w) {
  double sum = 0.0;
  double power = 1.0;
  for (std::size_t n = 1; n <= kMaxTerms; ++n) {
    power *= w;
    const double term = power / (static_cast<double>(n) - delta);
    sum += term;
    if (std::abs(term) <= kTermTol * std::abs(sum)) return -delta * sum;
  }
  throw NumericalError("hyp2f1", "direct series did not converge");
}

// Pfaff: F(w) = (1 - w)^{-1} 2F1(1, 1; c; t), t = w / (w - 1) in [0, 1).
double pfaff_value(double delta, double w) {
  const double c = 1.0 - delta;
  const double t = w / (w - 1.0);
  double term = 1.0;
  double sum = 1.0;
  for (std::size_t n = 1; n <= kMaxTerms; ++n) {
    term *= static_cast<double>(n) / (c + static_cast<double>(n) - 1.0) * t;
    sum += term;
    if (term <= kTermTol * sum) return sum / (1.0 - w);
  }
  throw NumericalError("hyp2f1", "Pfaff series did not converge");
}

// For u = -w > 1:
//   F(-u) = 1 + pi delta / sin(pi delta) u^delta - delta sum_{n>=0} (-1/u)^n / (n + delta).
double inversion_minus_one(double delta, double u) {
  const double v = -1.0 / u;
  double sum = 0.0;
  double power = 1.0;
  for (std::size_t n = 0; n <= kMaxTerms; ++n) {
    const double term = power / (static_cast<double>(n) + delta);
    sum += term;
    if (std::abs(term) <= kTermTol * std::abs(sum)) {
      const double lead = std::numbers::pi * delta / std::sin(std::numbers::pi * delta);
      return lead * std::pow(u, delta) - delta * sum;
    }
    power *= v;
  }
  throw NumericalError("hyp2f1", "inversion series did not converge");
}

}  // namespace

HypergeomParams HypergeomParams::interference(double alpha, double w) {
  const double delta = 2.0 / alpha;
  return {-delta, 1.0, 1.0 - delta, w};
}

double hyp2f1_series(double a, double b, double c, double w, std::size_t nmax) {
  if (!(std::abs(w) < 1.0)) throw DomainError("hyp2f1_series: requires |w| < 1");
  if (c <= 0.0 && c == std::floor(c)) {
    throw DomainError("hyp2f1_series: c must not be a non-positive integer");
  }
  if (nmax == 0) return 0.0;
  // Neumaier summation
  double sum = 1.0;
  double comp = 0.0;
  double term = 1.0;
  for (std::size_t n = 1; n < nmax; ++n) {
    const double k = static_cast<double>(n - 1);
    term *= (a + k) * (b + k) / ((c + k) * static_cast<double>(n)) * w;
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
    if (term == 0.0) break;
  }
  return sum + comp;
}

double hyp2f1_interference_minus_one(double alpha, double w) {
  check_interference_args(alpha, w);
  if (w == 0.0) return 0.0;
  const double delta = 2.0 / alpha;
  const double u = -w;
  if (u <= kDirectLimit) return direct_minus_one(delta, w);
  if (u <= kPfaffLimit) return pfaff_value(delta, w) - 1.0;
  return inversion_minus_one(delta, u);
}

double hyp2f1_interference(double alpha, double w) {
  return 1.0 + hyp2f1_interference_minus_one(alpha, w);
}

}  // namespace netshare
