#include "netshare/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace netshare {

namespace {

// Kronrod abscissae and weights, with the embedded 10-point Gauss weights (QUADPACK qk21).
constexpr double kNodes[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr double kKronrod[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208977710768, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double kGauss[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment rule21(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrod[10];
  double gauss = 0.0;
  double abs_sum = std::abs(kronrod);
  double fv[21];
  fv[20] = fc;
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kNodes[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv[2 * j] = f1;
    fv[2 * j + 1] = f2;
    kronrod += kKronrod[j] * (f1 + f2);
    abs_sum += kKronrod[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kGauss[j / 2] * (f1 + f2);
  }
  const double mean = 0.5 * kronrod;
  double asc = kKronrod[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) {
    asc += kKronrod[j] * (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean));
  }
  const double value = kronrod * half;
  asc *= std::abs(half);
  abs_sum *= std::abs(half);
  double error = std::abs((kronrod - gauss) * half);
  if (asc != 0.0 && error != 0.0) {
    error = asc * std::min(1.0, std::pow(200.0 * error / asc, 1.5));
  }
  const double round_floor = 50.0 * std::numeric_limits<double>::epsilon() * abs_sum;
  if (abs_sum > std::numeric_limits<double>::min() / (50.0 * std::numeric_limits<double>::epsilon())) {
    error = std::max(error, round_floor);
  }
  return {a, b, value, error};
}

}  // namespace

QuadratureResult integrate_gk21(const std::function<double(double)>& f, double a, double b,
                                double rel_tol, double abs_tol, int max_intervals) {
  QuadratureResult out;
  if (a == b) return out;
  std::priority_queue<Segment> heap;
  Segment first = rule21(f, a, b);
  heap.push(first);
  double value = first.value;
  double error = first.error;
  out.evaluations = 21;
  int intervals = 1;
  while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
    if (intervals >= max_intervals) {
      out.converged = false;
      break;
    }
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) {
      out.converged = false;
      break;
    }
    heap.pop();
    const Segment left = rule21(f, worst.a, mid);
    const Segment right = rule21(f, mid, worst.b);
    out.evaluations += 42;
    ++intervals;
    heap.push(left);
    heap.push(right);
    // Re-sum from the heap contents to avoid drift from repeated subtraction.
    value = 0.0;
    error = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      value += copy.top().value;
      error += copy.top().error;
      copy.pop();
    }
  }
  out.value = value;
  out.error = error;
  out.intervals = intervals;
  return out;
}

}  // namespace netshare
