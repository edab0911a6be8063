#include "mfrac/fracderiv.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "mfrac/errors.hpp"

namespace mfrac {

namespace {

constexpr int kMaxRichardsonLevels = 20;

void require_positive_time(double t, const char* op) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError(std::string(op) + ": t must be finite and positive, got " + std::to_string(t));
  }
}

std::string fmt(double v) { return std::to_string(v); }

// Quotient [f(t E(eps t^offset)) - f(t)] / eps. The perturbed argument is
// formed as t + t (E - 1) so that the small increment keeps full precision.
LimitEstimate limit_quotient(const RealFn& f, const FracParams& p, double t, double exponent,
                             double alpha_scale) {
  const double ft = f(t);
  const double z_scale = std::pow(t, exponent);
  const MLParams ml = p.ml();
  double f_max = std::abs(ft);
  auto quotient = [&](double eps) {
    const double arg = t + t * ml_truncated_m1(eps * z_scale, ml);
    const double fa = f(arg);
    f_max = std::max(f_max, std::abs(fa));
    return (fa - ft) / eps;
  };
  const double eps0 = 1e-2 / z_scale;
  // Extrapolation noise floor: a derivative of size |f| t^-alpha resolved to
  // nine digits. Only matters where the true derivative vanishes.
  (void)quotient(eps0);
  const double floor = 1e-9 * f_max * alpha_scale;
  return richardson_limit(quotient, eps0, floor);
}

double find_witness(const std::function<double(double)>& g, double a, double b, const char* op) {
  auto safe_eval = [&](double t) {
    try {
      return g(t);
    } catch (const DomainError&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };

  const double h = (b - a) / kWitnessScanPoints;
  double prev_t = a;
  double prev_g = safe_eval(a);
  for (int j = 1; j <= kWitnessScanPoints; ++j) {
    const double tj = (j == kWitnessScanPoints) ? b : a + j * h;
    const double gj = safe_eval(tj);

    if (std::isfinite(prev_g) && std::isfinite(gj) && ((prev_g < 0.0) != (gj < 0.0)) &&
        prev_g != 0.0 && gj != 0.0) {
      double lo = prev_t;
      double hi = tj;
      double g_lo = prev_g;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double gm = g(mid);
        if (gm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((gm < 0.0) == (g_lo < 0.0)) {
          lo = mid;
          g_lo = gm;
        } else {
          hi = mid;
        }
      }
      const double c = 0.5 * (lo + hi);
      if (c > a && c < b && std::abs(g(c)) <= kWitnessTolerance) return c;
    }
    if (j < kWitnessScanPoints && std::isfinite(gj) && std::abs(gj) <= kWitnessTolerance) return tj;

    prev_t = tj;
    prev_g = gj;
  }
  throw NotFoundError(std::string(op) + ": no point in (" + fmt(a) + ", " + fmt(b) +
                      ") with vanishing derivative residual; preconditions likely violated");
}

void validate_interval(double a, double b, const char* op) {
  if (!(a > 0.0) || !(b > a) || !std::isfinite(b)) {
    throw ParameterError(std::string(op) + ": need 0 < a < b, got a = " + fmt(a) + ", b = " + fmt(b));
  }
}

}  // namespace

void validate_first_order(const FracParams& p) {
  if (!(p.alpha > 0.0 && p.alpha < 1.0)) {
    throw ParameterError("alpha must lie in (0, 1), got " + fmt(p.alpha));
  }
  validate(p.ml());
}

RealFn value_only(DualFn f) {
  return [f = std::move(f)](double t) { return f(t).val; };
}

double deriv_closed(const DualFn& f, const FracParams& p, double t) {
  validate_first_order(p);
  require_positive_time(t, "deriv_closed");
  const DualNumber y = f(t);
  return std::pow(t, 1.0 - p.alpha) * y.der / gamma_fn(p.beta + 1.0);
}

LimitEstimate richardson_limit(const std::function<double(double)>& quotient, double eps0,
                               double abs_floor) {
  std::array<std::array<double, kMaxRichardsonLevels + 1>, kMaxRichardsonLevels + 1> table{};
  double best = 0.0;
  double best_err = std::numeric_limits<double>::infinity();
  double best_eps = eps0;
  double eps = eps0;

  for (int j = 0; j <= kMaxRichardsonLevels; ++j, eps *= 0.5) {
    table[j][0] = quotient(eps);
    double factor = 1.0;
    for (int m = 1; m <= j; ++m) {
      factor *= 2.0;
      table[j][m] = table[j][m - 1] + (table[j][m - 1] - table[j - 1][m - 1]) / (factor - 1.0);
    }
    if (j == 0) continue;
    const double err = std::max(std::abs(table[j][j] - table[j][j - 1]),
                                std::abs(table[j][j] - table[j - 1][j - 1]));
    if (err <= best_err) {
      best_err = err;
      best = table[j][j];
      best_eps = eps;
    }
    // Rounding noise has taken over once the diagonal moves away again.
    if (j >= 2 && std::abs(table[j][j] - table[j - 1][j - 1]) >= 2.0 * best_err) break;
  }

  if (!std::isfinite(best) || best_err > std::max(1e-6 * std::abs(best), abs_floor)) {
    throw ConvergenceError("limit did not converge: best extrapolant " + fmt(best) +
                           " with error estimate " + fmt(best_err));
  }
  return {best, best_eps, best_err};
}

double deriv_quotient(const RealFn& f, const FracParams& p, double t, double eps) {
  validate_first_order(p);
  require_positive_time(t, "deriv_quotient");
  const double arg = t + t * ml_truncated_m1(eps * std::pow(t, -p.alpha), p.ml());
  return (f(arg) - f(t)) / eps;
}

LimitEstimate deriv_limit(const RealFn& f, const FracParams& p, double t) {
  validate_first_order(p);
  require_positive_time(t, "deriv_limit");
  return limit_quotient(f, p, t, -p.alpha, std::pow(t, -p.alpha));
}

double deriv_at_zero(const DualFn& f, const FracParams& p) {
  validate_first_order(p);
  constexpr int kFirst = 4;
  constexpr int kLast = 40;
  std::vector<double> s;
  s.reserve(kLast - kFirst + 1);
  for (int k = kFirst; k <= kLast; ++k) s.push_back(deriv_closed(f, p, std::ldexp(1.0, -k)));

  for (double v : s) {
    if (!std::isfinite(v)) throw ConvergenceError("deriv_at_zero: non-finite derivative near 0");
  }
  const std::size_t n = s.size();
  const double last = s[n - 1];
  const double d1 = s[n - 1] - s[n - 2];
  const double d0 = s[n - 2] - s[n - 3];
  const double scale = std::max(1.0, std::abs(last));
  if (std::abs(d1) <= 1e-14 * scale && std::abs(d0) <= 1e-14 * scale) return last;

  // Tail behaves like a geometric series in k: extrapolate with Aitken's
  // delta-squared, after making sure the ratio is contracting.
  auto aitken = [&](std::size_t i, double& ratio) {
    const double a0 = s[i - 2], a1 = s[i - 1], a2 = s[i];
    const double da = a1 - a0, db = a2 - a1;
    ratio = db / da;
    return a2 + db * ratio / (1.0 - ratio);
  };
  double r1 = 0.0, r0 = 0.0;
  const double lim1 = aitken(n - 1, r1);
  const double lim0 = aitken(n - 2, r0);
  if (!(std::abs(r1) < 1.0) || !(std::abs(r0) < 1.0)) {
    throw ConvergenceError("deriv_at_zero: closed-form derivative diverges as t -> 0+ (last value " +
                           fmt(last) + ")");
  }
  if (std::abs(lim1 - lim0) > 1e-6 * std::max(1.0, std::abs(lim1))) {
    throw ConvergenceError("deriv_at_zero: extrapolated limit did not settle (" + fmt(lim0) +
                           " vs " + fmt(lim1) + ")");
  }
  return lim1;
}

namespace {
void validate_higher(const FracParams& p, int n, double t) {
  if (n < 0) throw ParameterError("deriv_higher: n must be non-negative, got " + std::to_string(n));
  if (!(p.alpha > n && p.alpha <= n + 1)) {
    throw ParameterError("deriv_higher: alpha must lie in (" + std::to_string(n) + ", " +
                         std::to_string(n + 1) + "], got " + fmt(p.alpha));
  }
  validate(p.ml());
  require_positive_time(t, "deriv_higher");
}
}  // namespace

double deriv_higher(const DerivativeOracle& f, const FracParams& p, int n, double t) {
  validate_higher(p, n, t);
  return std::pow(t, n + 1 - p.alpha) * f(t, n + 1) / gamma_fn(p.beta + 1.0);
}

LimitEstimate deriv_higher_limit(const DerivativeOracle& f, const FracParams& p, int n, double t) {
  validate_higher(p, n, t);
  const RealFn fn = [&f, n](double s) { return f(s, n); };
  return limit_quotient(fn, p, t, n - p.alpha, std::pow(t, n - p.alpha));
}

FracParams family_params(const DerivFamily& fam, double alpha) {
  struct Visitor {
    double alpha;
    FracParams operator()(const Conformable&) const { return {alpha, 1.0, TruncationIndex::finite(1)}; }
    FracParams operator()(const Alternative&) const { return {alpha, 1.0, TruncationIndex::infinite()}; }
    FracParams operator()(const Generalized& g) const {
      return {alpha, 1.0, TruncationIndex::finite(g.i)};
    }
    FracParams operator()(const MFractional& m) const {
      return {alpha, m.beta, TruncationIndex::infinite()};
    }
    FracParams operator()(const Truncated& tr) const { return tr.params; }
  };
  return std::visit(Visitor{alpha}, fam);
}

std::string family_name(const DerivFamily& fam) {
  struct Visitor {
    std::string operator()(const Conformable&) const { return "Conformable"; }
    std::string operator()(const Alternative&) const { return "Alternative"; }
    std::string operator()(const Generalized& g) const {
      return "Generalized(i=" + std::to_string(g.i) + ")";
    }
    std::string operator()(const MFractional& m) const {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%g", m.beta);
      return std::string("MFractional(beta=") + buf + ")";
    }
    std::string operator()(const Truncated& tr) const {
      char buf[96];
      std::snprintf(buf, sizeof buf, "Truncated(alpha=%g, beta=%g, i=%s)", tr.params.alpha,
                    tr.params.beta, tr.params.trunc.to_string().c_str());
      return buf;
    }
  };
  return std::visit(Visitor{}, fam);
}

double rolle_witness(const DualFn& f, double a, double b, const FracParams& p) {
  validate_first_order(p);
  validate_interval(a, b, "rolle_witness");
  const double fa = f(a).val;
  const double fb = f(b).val;
  if (std::abs(fa - fb) > 1e-12 * (1.0 + std::abs(fa))) {
    throw ParameterError("rolle_witness: f(a) = " + fmt(fa) + " differs from f(b) = " + fmt(fb));
  }
  return find_witness([&](double t) { return deriv_closed(f, p, t); }, a, b, "rolle_witness");
}

double mvt_witness(const DualFn& f, double a, double b, const FracParams& p) {
  validate_first_order(p);
  validate_interval(a, b, "mvt_witness");
  const double ratio = (f(b).val - f(a).val) /
                       ((std::pow(b, p.alpha) - std::pow(a, p.alpha)) / p.alpha);
  const double target = ratio / gamma_fn(p.beta + 1.0);
  return find_witness([&](double t) { return deriv_closed(f, p, t) - target; }, a, b,
                      "mvt_witness");
}

double cauchy_mvt_witness(const DualFn& f, const DualFn& g, double a, double b,
                          const FracParams& p) {
  validate_first_order(p);
  validate_interval(a, b, "cauchy_mvt_witness");
  const double dg = g(b).val - g(a).val;
  if (dg == 0.0) throw ParameterError("cauchy_mvt_witness: g(b) == g(a)");
  const double k = (f(b).val - f(a).val) / dg;
  return find_witness([&](double t) { return deriv_closed(f, p, t) - k * deriv_closed(g, p, t); },
                      a, b, "cauchy_mvt_witness");
}

}  // namespace mfrac
