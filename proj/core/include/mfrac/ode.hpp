#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mfrac/dual.hpp"
#include "mfrac/fracderiv.hpp"

namespace mfrac {

enum class OdeSign { Plus, Minus };

/// D v + mu_sq v = 0 (Plus) or D v - mu_sq v = 0 (Minus), v scaled by c.
/// alpha may equal 1 here, which gives the classical equation.
struct LinearOdeProblem {
  double mu_sq = 1.0;
  OdeSign sign = OdeSign::Plus;
  double c = 1.0;
  FracParams p;
};

/// Requires mu_sq > 0, 0 < alpha <= 1 and beta > 0.
void validate(const LinearOdeProblem& prob);

struct OdeSolution {
  std::function<double(double)> eval;
  /// Value and derivative; present for closed-form solutions.
  std::function<DualNumber(double)> eval_dual;
  std::optional<std::string> closed_form;

  double operator()(double t) const { return eval(t); }
};

/// v(t) = c exp(-/+ Gamma(beta + 1) mu_sq t^alpha / alpha), decaying for
/// OdeSign::Plus and growing for OdeSign::Minus.
OdeSolution solve_linear(const LinearOdeProblem& prob);

struct LinearResidual {
  /// max |D v(t) +/- mu_sq v(t)|
  double max_abs = 0.0;
  /// max |D v(t) +/- mu_sq v(t)| / (1 + |v(t)|)
  double max_scaled = 0.0;
};

/// Substitutes sol into the problem's equation at each t > 0, using the
/// closed-form derivative t^(1-alpha) v'(t) / Gamma(beta + 1). sol must
/// provide eval_dual.
LinearResidual verify_linear(const OdeSolution& sol, const LinearOdeProblem& prob,
                             const std::vector<double>& ts);

/// Solves D v = g(t, v), v(t0) = v0 on [t0, t1] by rewriting it as
/// v' = Gamma(beta + 1) t^(alpha - 1) g(t, v) and applying classical RK4 on
/// `steps` uniform intervals. The evaluator interpolates with cubic Hermite
/// polynomials and throws DomainError outside [t0, t1]. Requires t0 > 0,
/// t1 > t0 and steps >= 4; throws ConvergenceError if the solution
/// overflows.
OdeSolution solve_general(const std::function<double(double, double)>& g, double t0, double v0,
                          double t1, const FracParams& p, int steps);

}  // namespace mfrac
