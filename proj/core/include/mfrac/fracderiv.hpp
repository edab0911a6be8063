#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>

#include "mfrac/dual.hpp"
#include "mfrac/special.hpp"

namespace mfrac {

/// Selects one member of the truncated M-fractional derivative family:
/// order alpha, Mittag-Leffler parameter beta and truncation index i.
struct FracParams {
  double alpha = 0.5;
  double beta = 1.0;
  TruncationIndex trunc = TruncationIndex::infinite();

  MLParams ml() const { return {beta, trunc}; }
};

/// First-order operators: 0 < alpha < 1 and beta > 0, else ParameterError.
void validate_first_order(const FracParams& p);

using RealFn = std::function<double(double)>;
using DualFn = std::function<DualNumber(double)>;

/// Wraps a callable taking a DualNumber into a DualFn seeded with dt/dt = 1.
template <class F>
DualFn differentiable(F f) {
  return [f](double t) { return f(DualNumber::variable(t)); };
}

/// Drops the derivative component.
RealFn value_only(DualFn f);

struct LimitEstimate {
  double value = 0.0;
  /// Smallest epsilon that entered the accepted extrapolant.
  double eps_used = 0.0;
  double extrapolation_error = 0.0;
};

/// Closed form t^(1-alpha) f'(t) / Gamma(beta + 1). Independent of the
/// truncation index. Requires t > 0.
double deriv_closed(const DualFn& f, const FracParams& p, double t);

/// Limit definition: the quotient [f(t E(eps t^-alpha)) - f(t)] / eps with E
/// the truncated Mittag-Leffler function, sampled at eps_j = eps0 2^-j,
/// eps0 = 1e-2 t^alpha, and Richardson-extrapolated to eps -> 0. Throws
/// ConvergenceError when the extrapolants do not settle to 1e-6 relative.
LimitEstimate deriv_limit(const RealFn& f, const FracParams& p, double t);

/// The difference quotient [f(t E(eps t^-alpha)) - f(t)] / eps at one eps.
double deriv_quotient(const RealFn& f, const FracParams& p, double t, double eps);

/// Richardson extrapolation of a quotient whose error expands in integer
/// powers of eps. Samples eps0 2^-j for j = 0..20, keeps the diagonal entry
/// with the smallest increment and stops once increments grow. Converged
/// when the error is within max(1e-6 |value|, abs_floor).
LimitEstimate richardson_limit(const std::function<double(double)>& quotient, double eps0,
                               double abs_floor);

/// One-sided limit t -> 0+ of deriv_closed, from t_k = 2^-k, k = 4..40.
/// Throws ConvergenceError when the sequence diverges (e.g. f = 1/t).
double deriv_at_zero(const DualFn& f, const FracParams& p);

/// f(t, k) returns the k-th classical derivative of f at t.
using DerivativeOracle = std::function<double(double t, int order)>;

/// Higher-order closed form t^(n+1-alpha) f^(n+1)(t) / Gamma(beta + 1) for
/// n < alpha <= n + 1.
double deriv_higher(const DerivativeOracle& f, const FracParams& p, int n, double t);

/// Limit definition of the higher-order operator, applied to f^(n) with the
/// argument t E(eps t^(n-alpha)). Cross-validates deriv_higher.
LimitEstimate deriv_higher_limit(const DerivativeOracle& f, const FracParams& p, int n, double t);

// The local derivative families recovered at special (beta, i).
struct Conformable {};
struct Alternative {};
struct Generalized {
  std::uint64_t i = 1;
};
struct MFractional {
  double beta = 1.0;
};
struct Truncated {
  FracParams params;
};

using DerivFamily = std::variant<Conformable, Alternative, Generalized, MFractional, Truncated>;

/// Parameters of a family member at order alpha. Truncated ignores alpha
/// and returns its own parameters.
FracParams family_params(const DerivFamily& fam, double alpha);

/// Human-readable label, e.g. "Generalized(i=5)".
std::string family_name(const DerivFamily& fam);

inline constexpr int kWitnessScanPoints = 1024;
inline constexpr double kWitnessTolerance = 1e-8;

/// c in (a, b) where the closed-form derivative vanishes, given f(a) = f(b)
/// to 1e-12 (1 + |f(a)|). Scans 1024 subintervals for a small value or a
/// sign change, bisects to width 1e-12 and returns the smallest qualifying c.
double rolle_witness(const DualFn& f, double a, double b, const FracParams& p);

/// c in (a, b) with
///     deriv_closed(f, c) = (f(b) - f(a)) / ((b^alpha - a^alpha) / alpha) / Gamma(beta + 1)
/// found by applying the Rolle search to f(t) - R t^alpha / alpha.
double mvt_witness(const DualFn& f, double a, double b, const FracParams& p);

/// c in (a, b) with D f(c) / D g(c) = (f(b) - f(a)) / (g(b) - g(a)).
double cauchy_mvt_witness(const DualFn& f, const DualFn& g, double a, double b,
                          const FracParams& p);

}  // namespace mfrac
