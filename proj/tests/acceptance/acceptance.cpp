// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "mfrac/errors.hpp"
#include "mfrac/fracderiv.hpp"
#include "mfrac/fracint.hpp"
#include "mfrac/heat.hpp"
#include "mfrac/ode.hpp"
#include "mfrac/special.hpp"
#include "support/calculus_rules.hpp"

namespace {

using mfrac::DualNumber;
using mfrac::FracParams;
using mfrac::TruncationIndex;

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// Keeps the worst value of a measured quantity against its bound.
struct Worst {
  double value = 0.0;
  std::string where;
  void update(double v, const std::string& w) {
    if (!(v <= value)) {
      value = v;
      where = w;
    }
  }
};

Outcome ml_reductions() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  double worst_linear = 0.0;
  for (int n = 0; n < 100; ++n) {
    const double z = dist(rng);
    const double v = mfrac::ml_truncated(z, {1.0, TruncationIndex::finite(1)});
    worst_linear = std::max(worst_linear, std::abs(v - (1.0 + z)) / std::max(1.0, std::abs(1.0 + z)));
  }
  Worst exp_err;
  for (int j = 0; j <= 2000; ++j) {
    const double z = -10.0 + j * 0.01;
    const double want = std::exp(z);
    exp_err.update(std::abs(mfrac::ml_truncated(z, {1.0, TruncationIndex::infinite()}) - want) / want,
                   "z=" + std::to_string(z));
  }
  const double eps = std::numeric_limits<double>::epsilon();
  return {worst_linear <= eps && exp_err.value <= 1e-12,
          "i=1: max |E-(1+z)| " + sci(worst_linear) + " (bound " + sci(eps) + "); i=inf vs exp: max rel " +
              sci(exp_err.value) + " at " + exp_err.where + " (bound 1e-12)"};
}

Outcome limit_vs_closed() {
  struct Named {
    const char* name;
    mfrac::DualFn f;
  };
  const std::vector<Named> fs = {
      {"t^2", mfrac::differentiable([](DualNumber t) { return t * t; })},
      {"sin t", mfrac::differentiable([](DualNumber t) { return sin(t); })},
      {"e^t", mfrac::differentiable([](DualNumber t) { return exp(t); })},
      {"50t(1-t)", mfrac::differentiable([](DualNumber t) { return 50.0 * t * (1.0 - t); })},
  };
  Worst w;
  int cases = 0;
  for (const auto& nf : fs) {
    for (double alpha : {0.1, 0.5, 0.9}) {
      for (double beta : {0.5, 1.0, 2.0}) {
        for (auto i : {TruncationIndex::finite(1), TruncationIndex::finite(3), TruncationIndex::finite(10),
                       TruncationIndex::infinite()}) {
          for (double t : {0.5, 1.0, 2.0}) {
            const FracParams p{alpha, beta, i};
            const double closed = mfrac::deriv_closed(nf.f, p, t);
            const double limit = mfrac::deriv_limit(mfrac::value_only(nf.f), p, t).value;
            const double ratio = std::abs(limit - closed) / std::max(1e-6, 1e-6 * std::abs(closed));
            w.update(ratio, std::string(nf.name) + " a=" + sci(alpha) + " b=" + sci(beta) + " i=" +
                                i.to_string() + " t=" + sci(t));
            ++cases;
          }
        }
      }
    }
  }
  return {cases == 432 && w.value <= 1.0,
          std::to_string(cases) + " cases; worst |limit-closed| / max(1e-6, 1e-6|closed|) = " + sci(w.value) +
              " (" + w.where + ")"};
}

Outcome calculus_rules() {
  const auto r = mfrac::testing::calculus_rule_residuals(1000, 2024);
  const bool pass = r.linearity <= 1e-12 && r.product <= 1e-12 && r.quotient <= 1e-12 && r.constant == 0.0 &&
                    r.composition <= 1e-12;
  return {pass, "1000 instances each; max rel residual linearity " + sci(r.linearity) + ", product " +
                    sci(r.product) + ", quotient " + sci(r.quotient) + ", constant " + sci(r.constant) +
                    ", composition " + sci(r.composition) + " (bound 1e-12)"};
}

Outcome inverse_theorems() {
  Worst di, id;
  const std::vector<std::pair<const char*, mfrac::RealFn>> fs = {
      {"sin", [](double x) { return std::sin(x); }},
      {"x^2", [](double x) { return x * x; }},
      {"exp(-x)", [](double x) { return std::exp(-x); }},
  };
  for (const auto& [name, f] : fs) {
    for (double alpha : {0.2, 0.5, 0.8}) {
      for (double beta : {0.5, 1.0, 2.0}) {
        for (auto [a, t] : {std::pair{0.0, 1.5}, std::pair{0.5, 2.0}}) {
          const FracParams p{alpha, beta, TruncationIndex::infinite()};
          di.update(mfrac::check_inverse_DI(f, a, t, p),
                    std::string(name) + " a=" + sci(alpha) + " b=" + sci(beta) + " [" + sci(a) + "," + sci(t) + "]");
        }
      }
    }
  }
  di.update(mfrac::check_inverse_DI([](double x) { return std::sin(x); }, 0.5, 2.0, {0.3, 1.0, TruncationIndex::infinite()}), "sin example");
  di.update(mfrac::check_inverse_DI([](double x) { return x * x; }, 1.0, 1.5, {0.9, 0.5, TruncationIndex::infinite()}), "x^2 example");

  for (double a : {0.5, 1.0}) {
    const std::vector<std::pair<const char*, mfrac::DualFn>> gs = {
        {"x-a", mfrac::differentiable([a](DualNumber x) { return x - a; })},
        {"(x-a)^2", mfrac::differentiable([a](DualNumber x) { return (x - a) * (x - a); })},
        {"sin(x-a)", mfrac::differentiable([a](DualNumber x) { return sin(x - a); })},
    };
    for (const auto& [name, g] : gs) {
      for (double alpha : {0.2, 0.5, 0.8}) {
        for (double beta : {0.5, 1.0, 2.0}) {
          id.update(mfrac::check_inverse_ID(g, a, a + 1.0, {alpha, beta, TruncationIndex::infinite()}),
                    std::string(name) + " a=" + sci(a) + " alpha=" + sci(alpha) + " beta=" + sci(beta));
        }
      }
    }
  }
  return {di.value <= 1e-6 && id.value <= 1e-9, "D(I f) max residual " + sci(di.value) + " (bound 1e-6, " +
                                                     di.where + "); I(D f) max residual " + sci(id.value) +
                                                     " (bound 1e-9, " + id.where + ")"};
}

Outcome family_equivalence() {
  bool exact = true, monotone = true;
  Worst gen20, mf1;
  const std::vector<const char*> exprs = {"t^2", "sin(t)", "exp(t)", "50*t*(1-t)"};
  for (const char* text : exprs) {
    const mfrac::Expr f = mfrac::parse(text);
    for (double alpha : {0.3, 0.5, 0.8}) {
      for (double t : {0.5, 1.0, 2.0}) {
        const auto rows = mfrac::cli::compare_families(f, alpha, t);
        const auto& conformable = rows[0];
        const auto& gen1 = rows[1];
        const auto& alt = rows[6];
        exact = exact && conformable.value == gen1.value && conformable.quotient_eps0 == gen1.quotient_eps0;
        for (std::size_t j = 2; j <= 6; ++j) {
          monotone = monotone && rows[j].quotient_gap_alternative <= rows[j - 1].quotient_gap_alternative;
        }
        const std::string where = std::string(text) + " alpha=" + sci(alpha) + " t=" + sci(t);
        gen20.update(std::max(std::abs(rows[5].value - alt.value), rows[5].quotient_gap_alternative), where);
        mf1.update(std::abs(rows[8].value - alt.value), where);
      }
    }
  }
  return {exact && monotone && gen20.value <= 1e-10 && mf1.value <= 1e-12,
          std::string("Conformable==Generalized(1): ") + (exact ? "yes" : "no") +
              "; quotient gaps non-increasing in i: " + (monotone ? "yes" : "no") + "; |Gen(20)-Alt| max over value and quotient " +
              sci(gen20.value) + " (bound 1e-10); |MF(1)-Alt| max " + sci(mf1.value) + " (bound 1e-12)"};
}

Outcome linear_ode() {
  Worst res, classical;
  const std::vector<double> ts = {0.05, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
  for (double mu_sq : {0.1, 1.0, 10.0}) {
    for (double alpha : {0.25, 0.5, 0.9}) {
      for (double beta : {0.5, 1.0, 2.0}) {
        for (auto sign : {mfrac::OdeSign::Plus, mfrac::OdeSign::Minus}) {
          const mfrac::LinearOdeProblem prob{mu_sq, sign, 1.0, {alpha, beta, TruncationIndex::infinite()}};
          const auto r = mfrac::verify_linear(mfrac::solve_linear(prob), prob, ts);
          res.update(r.max_scaled, "mu2=" + sci(mu_sq) + " alpha=" + sci(alpha) + " beta=" + sci(beta));
        }
      }
    }
    for (auto sign : {mfrac::OdeSign::Plus, mfrac::OdeSign::Minus}) {
      const double s = sign == mfrac::OdeSign::Plus ? -1.0 : 1.0;
      const auto sol = mfrac::solve_linear({mu_sq, sign, 1.0, {1.0, 1.0, TruncationIndex::infinite()}});
      for (double t : {0.1, 0.5, 1.0, 2.0}) {
        const double want = std::exp(s * mu_sq * t);
        classical.update(std::abs(sol(t) - want) / want, "mu2=" + sci(mu_sq) + " t=" + sci(t));
      }
    }
  }
  return {res.value <= 1e-9 && classical.value <= 1e-12,
          "max |D v +/- mu2 v| / (1+|v|) = " + sci(res.value) + " (bound 1e-9); classical limit max rel " +
              sci(classical.value) + " (bound 1e-12)"};
}

std::vector<std::vector<double>> table_numbers(const mfrac::cli::CsvTable& table) {
  std::vector<std::vector<double>> out;
  for (const auto& row : table.rows()) {
    std::vector<double> r;
    for (const auto& f : row) r.push_back(std::stod(f));
    out.push_back(r);
  }
  return out;
}

double classical_series(double x, double t) {
  double u = 0.0;
  for (int n = 1; n <= 51; n += 2) {
    const double npi = n * kPi;
    u += 400.0 / (npi * npi * npi) * std::sin(npi * x) * std::exp(-npi * npi * 0.003 * t);
  }
  return u;
}

Outcome heat_equation() {
  std::vector<std::string> notes;
  bool pass = true;

  const mfrac::HeatProblem base = mfrac::cli::figure_config(1.0).problem;
  const double c1 = mfrac::fourier_coeffs(base)[0];
  const double c1_err = std::abs(c1 - 400.0 / (kPi * kPi * kPi));
  pass = pass && c1_err <= 1e-11;
  notes.push_back("(a) |c1-400/pi^3| " + sci(c1_err));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(0.0, 1.0), ut(0.0, 200.0);
  const double alphas[] = {0.2, 0.4, 0.6, 0.8, 1.0};
  const double betas[] = {0.5, 1.0, 2.0};
  double worst_res = 0.0;
  for (int n = 0; n < 100; ++n) {
    mfrac::HeatProblem p = base;
    p.alpha = alphas[n % 5];
    p.beta = betas[n % 3];
    const auto sol = mfrac::solve_heat(p);
    double x = ux(rng), t = ut(rng);
    if (x == 0.0) x = 0.5;
    if (t == 0.0) t = 1.0;
    worst_res = std::max(worst_res, mfrac::heat_residual(sol, x, t) / (1 + std::abs(sol(x, t))));
  }
  pass = pass && worst_res <= 1e-10;
  notes.push_back("(b) max residual/(1+|u|) " + sci(worst_res));

  std::vector<std::vector<std::vector<double>>> figs;
  for (double beta : betas) figs.push_back(table_numbers(mfrac::cli::heat_table(mfrac::cli::figure_config(beta))));
  bool boundaries = true;
  for (const auto& fig : figs) {
    for (std::size_t c = 1; c < fig.front().size(); ++c) {
      boundaries = boundaries && fig.front()[c] == 0.0 && fig.back()[c] == 0.0;
    }
  }
  for (double t : {0.0, 1.0, 150.0}) {
    const auto sol = mfrac::solve_heat(base);
    boundaries = boundaries && sol(0.0, t) == 0.0 && sol(1.0, t) == 0.0;
  }
  pass = pass && boundaries;
  notes.push_back(std::string("(c) boundaries exactly 0: ") + (boundaries ? "yes" : "no"));

  double worst_classical = 0.0;
  for (const auto& row : figs[1]) worst_classical = std::max(worst_classical, std::abs(row[5] - classical_series(row[0], 150.0)));
  pass = pass && worst_classical <= 1e-9;
  notes.push_back("(d) figure2 alpha=1 vs classical max " + sci(worst_classical));

  bool ordered = true;
  for (std::size_t j = 0; j < figs[0].size(); ++j) {
    for (std::size_t c = 1; c < figs[0][j].size(); ++c) {
      ordered = ordered && figs[2][j][c] <= figs[1][j][c] && figs[1][j][c] <= figs[0][j][c];
    }
  }
  pass = pass && ordered;
  notes.push_back(std::string("(e) u_b2 <= u_b1 <= u_b0.5 at t=150: ") + (ordered ? "yes" : "no"));

  std::string detail;
  for (const auto& n : notes) detail += (detail.empty() ? "" : "; ") + n;
  return {pass, detail};
}

Outcome witnesses() {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ua(0.2, 2.0), uw(0.5, 2.0), ucoef(-2.0, 2.0);
  std::uniform_real_distribution<double> ualpha(0.1, 0.9), ubeta(0.3, 2.5);
  int found = 0;
  Worst res;
  for (int n = 0; n < 50; ++n) {
    const double a = ua(rng), b = a + uw(rng);
    const FracParams p{ualpha(rng), ubeta(rng), TruncationIndex::infinite()};
    const double q0 = ucoef(rng), q1 = ucoef(rng), amp = ucoef(rng);
    const int m = 1 + n % 3;
    std::function<double(double)> fprime;
    mfrac::DualFn f;
    double c = 0.0;
    double target = 0.0;
    try {
      switch (n % 4) {
        case 0:  // Rolle, polynomial vanishing at both ends
          f = mfrac::differentiable([=](DualNumber t) { return (t - a) * (t - b) * (q0 + 0.1 * q1 * t); });
          fprime = [=](double t) {
            return (2 * t - a - b) * (q0 + 0.1 * q1 * t) + (t - a) * (t - b) * 0.1 * q1;
          };
          c = mfrac::rolle_witness(f, a, b, p);
          break;
        case 1:  // Rolle, trigonometric
          f = mfrac::differentiable([=](DualNumber t) { return amp * sin(m * kPi * (t - a) / (b - a)) + q0; });
          fprime = [=](double t) { return amp * m * kPi / (b - a) * std::cos(m * kPi * (t - a) / (b - a)); };
          c = mfrac::rolle_witness(f, a, b, p);
          break;
        case 2:  // mean value, cubic
          f = mfrac::differentiable([=](DualNumber t) { return q0 * t * t * t + q1 * t * t + amp * t; });
          fprime = [=](double t) { return 3 * q0 * t * t + 2 * q1 * t + amp; };
          c = mfrac::mvt_witness(f, a, b, p);
          break;
        default:  // mean value, trigonometric plus linear
          f = mfrac::differentiable([=](DualNumber t) { return amp * sin(q1 * t) + q0 * t; });
          fprime = [=](double t) { return amp * q1 * std::cos(q1 * t) + q0; };
          c = mfrac::mvt_witness(f, a, b, p);
          break;
      }
    } catch (const mfrac::NotFoundError& e) {
      res.update(1e300, std::string("instance ") + std::to_string(n) + ": " + e.what());
      continue;
    }
    if (n % 4 >= 2) {
      const double ratio = (f(b).val - f(a).val) / ((std::pow(b, p.alpha) - std::pow(a, p.alpha)) / p.alpha);
      target = ratio / std::tgamma(p.beta + 1);
    }
    const double lhs = std::pow(c, 1 - p.alpha) * fprime(c) / std::tgamma(p.beta + 1);
    const bool inside = c > a && c < b;
    res.update(inside ? std::abs(lhs - target) : 1e300, "instance " + std::to_string(n));
    if (inside) ++found;
  }
  return {found == 50 && res.value <= 1e-8, std::to_string(found) + "/50 witnesses found; max residual " +
                                                sci(res.value) + " (bound 1e-8, " + res.where + ")"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / ("mfrac_acceptance_" + std::to_string(::getpid()));
  mfrac::cli::write_figures(root / "first");
  mfrac::cli::write_figures(root / "second");
  bool same = true;
  std::size_t bytes = 0;
  for (const char* name : {"figure1.csv", "figure2.csv", "figure3.csv"}) {
    const std::string x = slurp(root / "first" / name);
    const std::string y = slurp(root / "second" / name);
    same = same && !x.empty() && x == y;
    bytes += x.size();
  }
  fs::remove_all(root);
  return {same, std::string("three figure files, ") + std::to_string(bytes) + " bytes, identical: " + (same ? "yes" : "no")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {"truncated Mittag-Leffler reductions", ml_reductions},
      {"closed form vs limit definition", limit_vs_closed},
      {"calculus rules", calculus_rules},
      {"inverse theorems", inverse_theorems},
      {"family equivalence", family_equivalence},
      {"linear ODE", linear_ode},
      {"heat equation", heat_equation},
      {"Rolle / mean-value witnesses", witnesses},
      {"figure determinism", determinism},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %zu. %s: %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].name, o.detail.c_str());
    if (!o.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
