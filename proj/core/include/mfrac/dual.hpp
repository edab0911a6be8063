#pragma once

#include <cmath>

namespace mfrac {

// Value and first derivative with respect to the single independent variable.
struct DualNumber {
  double val = 0.0;
  double der = 0.0;

  static constexpr DualNumber variable(double t) { return {t, 1.0}; }
  static constexpr DualNumber constant(double c) { return {c, 0.0}; }
};

constexpr DualNumber operator-(DualNumber a) { return {-a.val, -a.der}; }

constexpr DualNumber operator+(DualNumber a, DualNumber b) { return {a.val + b.val, a.der + b.der}; }
constexpr DualNumber operator-(DualNumber a, DualNumber b) { return {a.val - b.val, a.der - b.der}; }
constexpr DualNumber operator*(DualNumber a, DualNumber b) {
  return {a.val * b.val, a.der * b.val + a.val * b.der};
}
constexpr DualNumber operator/(DualNumber a, DualNumber b) {
  return {a.val / b.val, (a.der * b.val - a.val * b.der) / (b.val * b.val)};
}

constexpr DualNumber operator+(DualNumber a, double b) { return {a.val + b, a.der}; }
constexpr DualNumber operator+(double a, DualNumber b) { return {a + b.val, b.der}; }
constexpr DualNumber operator-(DualNumber a, double b) { return {a.val - b, a.der}; }
constexpr DualNumber operator-(double a, DualNumber b) { return {a - b.val, -b.der}; }
constexpr DualNumber operator*(DualNumber a, double b) { return {a.val * b, a.der * b}; }
constexpr DualNumber operator*(double a, DualNumber b) { return {a * b.val, a * b.der}; }
constexpr DualNumber operator/(DualNumber a, double b) { return {a.val / b, a.der / b}; }
constexpr DualNumber operator/(double a, DualNumber b) {
  return {a / b.val, -a * b.der / (b.val * b.val)};
}

inline DualNumber sin(DualNumber a) { return {std::sin(a.val), std::cos(a.val) * a.der}; }
inline DualNumber cos(DualNumber a) { return {std::cos(a.val), -std::sin(a.val) * a.der}; }
inline DualNumber exp(DualNumber a) {
  const double e = std::exp(a.val);
  return {e, e * a.der};
}
inline DualNumber log(DualNumber a) { return {std::log(a.val), a.der / a.val}; }
inline DualNumber sqrt(DualNumber a) {
  const double s = std::sqrt(a.val);
  return {s, a.der / (2.0 * s)};
}
inline DualNumber abs(DualNumber a) {
  return {std::abs(a.val), a.val < 0.0 ? -a.der : a.der};
}
// Real exponent; the caller keeps a.val > 0.
inline DualNumber pow(DualNumber a, double p) {
  const double v = std::pow(a.val, p);
  return {v, p * std::pow(a.val, p - 1.0) * a.der};
}

}  // namespace mfrac
