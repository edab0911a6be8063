#pragma once

#include <functional>

namespace mfrac {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int subdivisions = 1;
};

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  /// Maximum bisection depth of any single subinterval.
  int max_depth = 50;
  /// Maximum number of live subintervals.
  int max_intervals = 4000;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature over [a, b].
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate is below max(abs_tol, rel_tol * |value|). Throws ToleranceError
/// (carrying the best estimate) when the depth or interval cap is reached
/// first. Integrand exceptions propagate unchanged. Fully deterministic: the
/// final sum runs over subintervals in ascending order.
QuadratureResult integrate_gk15(const std::function<double(double)>& f, double a, double b,
                                const QuadratureOptions& opts = {});

}  // namespace mfrac
