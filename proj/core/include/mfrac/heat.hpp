#pragma once

#include <cstddef>
#include <vector>

#include "mfrac/expr.hpp"

namespace mfrac {

/// D_t^alpha u = k u_xx on 0 < x < L with u(0, t) = u(L, t) = 0 and
/// u(x, 0) = f(x). alpha = 1 gives the classical heat equation.
struct HeatProblem {
  double L = 1.0;
  double k = 1.0;
  double alpha = 0.5;
  double beta = 1.0;
  Expr initial_profile = Expr::constant(0.0);
  int n_terms = 51;
};

/// Requires L, k > 0, 0 < alpha <= 1, beta > 0, n_terms >= 1 and
/// |f(0)|, |f(L)| <= 1e-9. Throws ParameterError otherwise.
void validate(const HeatProblem& prob);

/// c_n = (2/L) integral_0^L f(x) sin(n pi x / L) dx for n = 1..N, each to
/// absolute error 1e-12. Quadrature failures are rethrown naming n.
std::vector<double> fourier_coeffs(const HeatProblem& prob);

/// Truncated series
///     u(x, t) = sum_n c_n sin(n pi x / L) exp(-Gamma(beta + 1) (n pi / L)^2 (k / alpha) t^alpha)
/// summed in ascending n.
class HeatSolution {
 public:
  /// Uses prob for L, k, alpha and beta and the given coefficients;
  /// prob.initial_profile and prob.n_terms are ignored.
  static HeatSolution from_coefficients(const HeatProblem& prob, std::vector<double> coeffs);

  double operator()(double x, double t) const;

  /// sin(n pi x / L), exactly zero at x = 0 and x = L.
  double mode(std::size_t n, double x) const;
  /// exp(-Gamma(beta + 1) (n pi / L)^2 (k / alpha) t^alpha)
  double time_factor(std::size_t n, double t) const;

  const std::vector<double>& coefficients() const { return coeffs_; }
  double L() const { return L_; }
  double k() const { return k_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

 private:
  HeatSolution() = default;

  std::vector<double> coeffs_;
  double L_ = 1.0;
  double k_ = 1.0;
  double alpha_ = 1.0;
  double beta_ = 1.0;
  double gamma_ = 1.0;
};

HeatSolution solve_heat(const HeatProblem& prob);

/// |D_t^alpha u - k u_xx| at (x, t), both sides from term-wise closed forms.
/// Requires 0 < x < L and t > 0, else DomainError.
double heat_residual(const HeatSolution& sol, double x, double t);

struct HeatLimits {
  /// beta = 1
  HeatSolution beta_one;
  /// beta = 1 and alpha = 1, the classical solution
  HeatSolution classical;
};

HeatLimits limit_solutions(const HeatProblem& prob);

}  // namespace mfrac
