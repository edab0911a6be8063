#pragma once

// Unevaluated sum of two doubles (hi + lo, |lo| <= ulp(hi)/2). Only the few
// operations the series kernels need.

#include <cmath>

namespace mfrac::detail {

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  double value() const { return hi + lo; }
};

inline DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DoubleDouble quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DoubleDouble operator+(DoubleDouble a, double b) {
  DoubleDouble s = two_sum(a.hi, b);
  s.lo += a.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
  DoubleDouble s = two_sum(a.hi, b.hi);
  const DoubleDouble t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DoubleDouble operator*(DoubleDouble a, double b) {
  const double p = a.hi * b;
  const double e = std::fma(a.hi, b, -p);
  return quick_two_sum(p, e + a.lo * b);
}

inline DoubleDouble operator/(DoubleDouble a, double b) {
  const double q1 = a.hi / b;
  // remainder a - q1 * b, exact through fma
  const double p = q1 * b;
  const double pe = std::fma(q1, b, -p);
  DoubleDouble r = two_sum(a.hi, -p);
  r.lo += a.lo - pe;
  const double q2 = (r.hi + r.lo) / b;
  return quick_two_sum(q1, q2);
}

}  // namespace mfrac::detail
