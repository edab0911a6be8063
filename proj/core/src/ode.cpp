#include "mfrac/ode.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>

#include "mfrac/errors.hpp"

namespace mfrac {

namespace {

std::string fmt(double v) { return std::to_string(v); }

double sign_factor(OdeSign s) { return s == OdeSign::Plus ? 1.0 : -1.0; }

struct Grid {
  double t0 = 0.0;
  double h = 0.0;
  int steps = 0;
  std::vector<double> v;
  std::vector<double> dv;
};

}  // namespace

void validate(const LinearOdeProblem& prob) {
  if (!(prob.mu_sq > 0.0) || !std::isfinite(prob.mu_sq)) {
    throw ParameterError("mu_sq must be positive, got " + fmt(prob.mu_sq));
  }
  if (!(prob.p.alpha > 0.0 && prob.p.alpha <= 1.0)) {
    throw ParameterError("alpha must lie in (0, 1], got " + fmt(prob.p.alpha));
  }
  if (!std::isfinite(prob.c)) throw ParameterError("c must be finite");
  validate(prob.p.ml());
}

OdeSolution solve_linear(const LinearOdeProblem& prob) {
  validate(prob);
  const double alpha = prob.p.alpha;
  const double rate = -sign_factor(prob.sign) * gamma_fn(prob.p.beta + 1.0) * prob.mu_sq / alpha;
  const double c = prob.c;

  OdeSolution sol;
  sol.eval = [=](double t) {
    if (!(t >= 0.0)) throw DomainError("solve_linear: t must be non-negative, got " + fmt(t));
    return c * std::exp(rate * std::pow(t, alpha));
  };
  sol.eval_dual = [=](double t) {
    if (!(t > 0.0)) throw DomainError("solve_linear: t must be positive, got " + fmt(t));
    const double e = c * std::exp(rate * std::pow(t, alpha));
    return DualNumber{e, e * rate * alpha * std::pow(t, alpha - 1.0)};
  };
  char buf[128];
  std::snprintf(buf, sizeof buf, "v(t) = %.17g * exp(%.17g * t^%.17g)", c, rate, alpha);
  sol.closed_form = buf;
  return sol;
}

LinearResidual verify_linear(const OdeSolution& sol, const LinearOdeProblem& prob,
                             const std::vector<double>& ts) {
  validate(prob);
  if (!sol.eval_dual) throw ParameterError("verify_linear: solution has no derivative evaluator");
  const double gamma = gamma_fn(prob.p.beta + 1.0);
  const double s = sign_factor(prob.sign);
  LinearResidual out;
  for (double t : ts) {
    if (!(t > 0.0)) throw DomainError("verify_linear: t must be positive, got " + fmt(t));
    const DualNumber v = sol.eval_dual(t);
    const double dv = std::pow(t, 1.0 - prob.p.alpha) * v.der / gamma;
    const double res = std::abs(dv + s * prob.mu_sq * v.val);
    out.max_abs = std::max(out.max_abs, res);
    out.max_scaled = std::max(out.max_scaled, res / (1.0 + std::abs(v.val)));
  }
  return out;
}

OdeSolution solve_general(const std::function<double(double, double)>& g, double t0, double v0,
                          double t1, const FracParams& p, int steps) {
  if (!(p.alpha > 0.0 && p.alpha <= 1.0)) {
    throw ParameterError("alpha must lie in (0, 1], got " + fmt(p.alpha));
  }
  validate(p.ml());
  if (steps < 4) throw ParameterError("solve_general: steps must be at least 4, got " + std::to_string(steps));
  if (!(t0 > 0.0) || !(t1 > t0) || !std::isfinite(t1)) {
    throw ParameterError("solve_general: need 0 < t0 < t1, got t0 = " + fmt(t0) + ", t1 = " + fmt(t1));
  }
  if (!std::isfinite(v0)) throw ParameterError("solve_general: v0 must be finite");

  const double gamma = gamma_fn(p.beta + 1.0);
  const double am1 = p.alpha - 1.0;
  auto rhs = [&](double t, double v) { return gamma * std::pow(t, am1) * g(t, v); };

  auto grid = std::make_shared<Grid>();
  grid->t0 = t0;
  grid->steps = steps;
  grid->h = (t1 - t0) / steps;
  grid->v.resize(steps + 1);
  grid->dv.resize(steps + 1);

  const double h = grid->h;
  double v = v0;
  grid->v[0] = v;
  for (int j = 0; j < steps; ++j) {
    const double t = t0 + j * h;
    const double k1 = rhs(t, v);
    grid->dv[j] = k1;
    const double k2 = rhs(t + 0.5 * h, v + 0.5 * h * k1);
    const double k3 = rhs(t + 0.5 * h, v + 0.5 * h * k2);
    const double k4 = rhs(t + h, v + h * k3);
    v += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!std::isfinite(v)) {
      throw ConvergenceError("solve_general: solution overflowed near t = " + fmt(t + h));
    }
    grid->v[j + 1] = v;
  }
  grid->dv[steps] = rhs(t0 + steps * h, v);

  OdeSolution sol;
  sol.eval = [grid, t1](double t) {
    if (!(t >= grid->t0 && t <= t1)) {
      throw DomainError("solution evaluated outside [" + fmt(grid->t0) + ", " + fmt(t1) + "] at " +
                        fmt(t));
    }
    if (t == t1) return grid->v[grid->steps];
    const double pos = (t - grid->t0) / grid->h;
    const int j = std::min(static_cast<int>(pos), grid->steps - 1);
    const double s = pos - j;
    const double step = grid->h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    return h00 * grid->v[j] + h10 * step * grid->dv[j] + h01 * grid->v[j + 1] +
           h11 * step * grid->dv[j + 1];
  };
  return sol;
}

}  // namespace mfrac
