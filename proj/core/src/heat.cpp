#include "mfrac/heat.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mfrac/errors.hpp"
#include "mfrac/quadrature.hpp"
#include "mfrac/special.hpp"

namespace mfrac {

namespace {

std::string fmt(double v) { return std::to_string(v); }

// sin(pi r) with the argument reduced exactly, so integer r gives 0.
double sin_pi(double r) {
  double m = std::fmod(r, 2.0);
  if (m < 0.0) m += 2.0;
  if (m == 0.0 || m == 1.0) return 0.0;
  double sign = 1.0;
  if (m > 1.0) {
    m -= 1.0;
    sign = -1.0;
  }
  if (m > 0.5) m = 1.0 - m;
  return sign * std::sin(std::numbers::pi * m);
}

}  // namespace

void validate(const HeatProblem& prob) {
  if (!(prob.L > 0.0) || !std::isfinite(prob.L)) throw ParameterError("L must be positive, got " + fmt(prob.L));
  if (!(prob.k > 0.0) || !std::isfinite(prob.k)) throw ParameterError("k must be positive, got " + fmt(prob.k));
  if (!(prob.alpha > 0.0 && prob.alpha <= 1.0)) {
    throw ParameterError("alpha must lie in (0, 1], got " + fmt(prob.alpha));
  }
  validate(MLParams{prob.beta, TruncationIndex::infinite()});
  if (prob.n_terms < 1) throw ParameterError("n_terms must be at least 1, got " + std::to_string(prob.n_terms));
  const double f0 = eval(prob.initial_profile, 0.0);
  const double fL = eval(prob.initial_profile, prob.L);
  if (std::abs(f0) > 1e-9 || std::abs(fL) > 1e-9) {
    throw ParameterError("initial profile must vanish at both ends, got f(0) = " + fmt(f0) +
                         ", f(L) = " + fmt(fL));
  }
}

std::vector<double> fourier_coeffs(const HeatProblem& prob) {
  validate(prob);
  const double scale = 2.0 / prob.L;
  QuadratureOptions opts;
  opts.abs_tol = 0.5e-12 / scale;
  opts.rel_tol = 0.0;
  std::vector<double> c(static_cast<std::size_t>(prob.n_terms));
  for (int n = 1; n <= prob.n_terms; ++n) {
    auto integrand = [&](double x) {
      return eval(prob.initial_profile, x) * sin_pi(n * (x / prob.L));
    };
    try {
      c[n - 1] = scale * integrate_gk15(integrand, 0.0, prob.L, opts).value;
    } catch (const ToleranceError& e) {
      throw ToleranceError("Fourier coefficient n = " + std::to_string(n) + ": " + e.what(),
                           scale * e.best_estimate(), scale * e.error_estimate());
    }
  }
  return c;
}

HeatSolution HeatSolution::from_coefficients(const HeatProblem& prob, std::vector<double> coeffs) {
  HeatSolution s;
  s.coeffs_ = std::move(coeffs);
  s.L_ = prob.L;
  s.k_ = prob.k;
  s.alpha_ = prob.alpha;
  s.beta_ = prob.beta;
  s.gamma_ = gamma_fn(prob.beta + 1.0);
  return s;
}

double HeatSolution::mode(std::size_t n, double x) const {
  return sin_pi(static_cast<double>(n) * (x / L_));
}

double HeatSolution::time_factor(std::size_t n, double t) const {
  const double mu = static_cast<double>(n) * std::numbers::pi / L_;
  return std::exp(-gamma_ * mu * mu * (k_ / alpha_) * std::pow(t, alpha_));
}

double HeatSolution::operator()(double x, double t) const {
  double u = 0.0;
  for (std::size_t n = 1; n <= coeffs_.size(); ++n) {
    u += coeffs_[n - 1] * mode(n, x) * time_factor(n, t);
  }
  return u;
}

HeatSolution solve_heat(const HeatProblem& prob) {
  return HeatSolution::from_coefficients(prob, fourier_coeffs(prob));
}

double heat_residual(const HeatSolution& sol, double x, double t) {
  if (!(x > 0.0 && x < sol.L())) throw DomainError("heat_residual: x must lie in (0, L), got " + fmt(x));
  if (!(t > 0.0)) throw DomainError("heat_residual: t must be positive, got " + fmt(t));
  const double alpha = sol.alpha();
  const double gamma = gamma_fn(sol.beta() + 1.0);
  const double t_pow = std::pow(t, 1.0 - alpha) / gamma;
  double lhs = 0.0;
  double rhs = 0.0;
  const auto& c = sol.coefficients();
  for (std::size_t n = 1; n <= c.size(); ++n) {
    const double mu = static_cast<double>(n) * std::numbers::pi / sol.L();
    const double e = sol.time_factor(n, t);
    const double s = sol.mode(n, x);
    const double de_dt = -gamma * mu * mu * sol.k() * std::pow(t, alpha - 1.0) * e;
    lhs += c[n - 1] * s * (t_pow * de_dt);
    rhs += c[n - 1] * (-mu * mu * s) * e;
  }
  return std::abs(lhs - sol.k() * rhs);
}

HeatLimits limit_solutions(const HeatProblem& prob) {
  HeatProblem beta_one = prob;
  beta_one.beta = 1.0;
  const std::vector<double> c = fourier_coeffs(beta_one);
  HeatProblem classical = beta_one;
  classical.alpha = 1.0;
  return {HeatSolution::from_coefficients(beta_one, c), HeatSolution::from_coefficients(classical, c)};
}

}  // namespace mfrac
