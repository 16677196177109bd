#pragma once

#include <algorithm>
#include <cmath>

namespace robust_synth::models {

/// Closed real interval with the handful of operations the Jacobian and
/// disturbance bounds need. Products of distinct intervals are exact ranges
/// when the operands are independent variables.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval point(double v) { return {v, v}; }
  double mag() const { return std::max(std::abs(lo), std::abs(hi)); }
  bool contains(double v) const { return lo <= v && v <= hi; }
};

inline Interval operator+(Interval a, Interval b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline Interval operator-(Interval a, Interval b) { return {a.lo - b.hi, a.hi - b.lo}; }
inline Interval operator*(Interval a, Interval b) {
  const double p[] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}
inline Interval operator*(double s, Interval a) { return s >= 0 ? Interval{s * a.lo, s * a.hi} : Interval{s * a.hi, s * a.lo}; }
inline Interval operator+(double s, Interval a) { return {s + a.lo, s + a.hi}; }

/// Exact range of x^2.
inline Interval sqr(Interval a) {
  const double l = a.lo * a.lo, h = a.hi * a.hi;
  if (a.lo <= 0.0 && a.hi >= 0.0) return {0.0, std::max(l, h)};
  return {std::min(l, h), std::max(l, h)};
}

}  // namespace robust_synth::models
