#pragma once

#include <algorithm>
#include <cmath>
#include <span>

namespace robusttrend {

/// Transition point of the Huber loss: quadratic inside [-gamma, gamma],
/// linear outside. gamma = +infinity selects the pure quadratic loss.
/// There is no usable default: 0 is invalid and callers must choose.
struct HuberParams {
  double gamma = 0.0;
  bool valid() const noexcept { return gamma > 0.0; }
};

inline double huber(double x, HuberParams p) {
  const double a = std::abs(x);
  if (a <= p.gamma) return 0.5 * x * x;
  return p.gamma * a - 0.5 * p.gamma * p.gamma;
}

inline double huber_derivative(double x, HuberParams p) {
  if (std::abs(x) <= p.gamma) return x;
  return x > 0.0 ? p.gamma : -p.gamma;
}

inline double huber_sum(std::span<const double> x, HuberParams p) {
  double s = 0.0;
  for (double v : x) s += huber(v, p);
  return s;
}

/// Curvature of the tightest quadratic upper bound of the Huber loss at the
/// expansion point x: huber'(x)/x, taken as its limit 1 at x = 0 and
/// clamped below by `floor` so diagonal weight matrices stay positive
/// definite. Requires 0 < floor <= 1; the result is always in (0, 1].
inline double mm_weight(double x, HuberParams p, double floor) {
  const double a = std::abs(x);
  const double w = (a <= p.gamma) ? 1.0 : p.gamma / a;
  return std::max(w, floor);
}

}  // namespace robusttrend
