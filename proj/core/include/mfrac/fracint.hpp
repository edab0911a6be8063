#pragma once

#include "mfrac/fracderiv.hpp"
#include "mfrac/quadrature.hpp"

namespace mfrac {

/// Required accuracy of mfrac_integral: max(1e-10, 1e-10 |value|).
inline constexpr double kIntegralTolerance = 1e-10;

/// M-fractional integral Gamma(beta + 1) * integral_a^t f(x) x^(alpha - 1) dx.
///
/// For a = 0 the weight singularity is removed with x = u^(1/alpha), which
/// turns the integral into (1/alpha) integral_0^(t^alpha) f(u^(1/alpha)) du.
/// Requires 0 <= a <= t, 0 < alpha < 1 and beta > 0. Throws ToleranceError
/// with the best estimate when the accuracy target is missed.
QuadratureResult mfrac_integral(const RealFn& f, double a, double t, const FracParams& p);

/// |D(I f)(t) - f(t)|, where D is the limit-definition derivative applied to
/// s -> mfrac_integral(f, a, s, p). Requires t > a.
double check_inverse_DI(const RealFn& f, double a, double t, const FracParams& p);

/// |I(D f)(t) - f(t)| with D the closed-form derivative. Requires
/// 0 < a < t and |f(a)| <= 1e-12, else ParameterError.
double check_inverse_ID(const DualFn& f, double a, double t, const FracParams& p);

}  // namespace mfrac
