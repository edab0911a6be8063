#include "mfrac/fracint.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mfrac/errors.hpp"

namespace mfrac {

namespace {

std::string fmt(double v) { return std::to_string(v); }

// Unscaled integral_a^t f(x) x^(alpha-1) dx.
QuadratureResult weighted_integral(const RealFn& f, double a, double t, double alpha,
                                   const QuadratureOptions& opts) {
  if (a == 0.0) {
    const double inv = 1.0 / alpha;
    QuadratureResult r = integrate_gk15([&](double u) { return f(std::pow(u, inv)); }, 0.0,
                                        std::pow(t, alpha), opts);
    r.value *= inv;
    r.abs_error_estimate *= inv;
    return r;
  }
  const double am1 = alpha - 1.0;
  return integrate_gk15([&](double x) { return f(x) * std::pow(x, am1); }, a, t, opts);
}

}  // namespace

QuadratureResult mfrac_integral(const RealFn& f, double a, double t, const FracParams& p) {
  validate_first_order(p);
  if (!(a >= 0.0) || !(t >= a) || !std::isfinite(t)) {
    throw ParameterError("mfrac_integral: need 0 <= a <= t, got a = " + fmt(a) + ", t = " + fmt(t));
  }
  if (a == t) return {0.0, 0.0, 1};

  const double scale = gamma_fn(p.beta + 1.0);
  QuadratureOptions opts;
  QuadratureResult r;
  for (int attempt = 0;; ++attempt) {
    r = weighted_integral(f, a, t, p.alpha, opts);
    r.value *= scale;
    r.abs_error_estimate *= scale;
    if (r.abs_error_estimate <= std::max(kIntegralTolerance, kIntegralTolerance * std::abs(r.value))) {
      return r;
    }
    if (attempt == 2) break;
    opts.abs_tol *= 1e-2;
    opts.rel_tol *= 1e-2;
  }
  throw ToleranceError("mfrac_integral: error estimate " + fmt(r.abs_error_estimate) +
                           " exceeds tolerance",
                       r.value, r.abs_error_estimate);
}

double check_inverse_DI(const RealFn& f, double a, double t, const FracParams& p) {
  validate_first_order(p);
  if (!(t > a)) throw ParameterError("check_inverse_DI: need t > a");
  const RealFn integral = [&](double s) { return mfrac_integral(f, a, s, p).value; };
  const LimitEstimate d = deriv_limit(integral, p, t);
  return std::abs(d.value - f(t));
}

double check_inverse_ID(const DualFn& f, double a, double t, const FracParams& p) {
  validate_first_order(p);
  if (!(a > 0.0) || !(t > a)) {
    throw ParameterError("check_inverse_ID: need 0 < a < t, got a = " + fmt(a) + ", t = " + fmt(t));
  }
  const double fa = f(a).val;
  if (std::abs(fa) > 1e-12) {
    throw ParameterError("check_inverse_ID: requires f(a) = 0, got f(a) = " + fmt(fa));
  }
  const RealFn df = [&](double s) { return deriv_closed(f, p, s); };
  return std::abs(mfrac_integral(df, a, t, p).value - f(t).val);
}

}  // namespace mfrac
