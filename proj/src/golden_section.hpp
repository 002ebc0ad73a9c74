#pragma once

#include <cmath>
#include <utility>

namespace nccausal::detail {

/// Golden-section search for the minimizer of a unimodal f on [lo, hi].
/// Stops when the bracket is narrower than tol. Returns (argmin, f(argmin)).
template <typename F>
std::pair<double, double> golden_minimize(F&& f, double lo, double hi, double tol) {
  constexpr double inv_phi = 0.6180339887498948482;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (std::abs(b - a) > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    if (c >= d) break;  // bracket collapsed to rounding
  }
  const double m = 0.5 * (a + b);
  double fm = f(m);
  if (fc < fm) return {c, fc};
  return {m, fm};
}

}  // namespace nccausal::detail
