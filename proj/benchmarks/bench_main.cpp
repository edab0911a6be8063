#include <benchmark/benchmark.h>

#include <cmath>

#include "mfrac/expr.hpp"
#include "mfrac/fracderiv.hpp"
#include "mfrac/fracint.hpp"
#include "mfrac/heat.hpp"
#include "mfrac/special.hpp"

namespace {

void BM_MlTruncatedInfinite(benchmark::State& state) {
  const mfrac::MLParams p{0.5, mfrac::TruncationIndex::infinite()};
  double z = -2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mfrac::ml_truncated(z, p));
    z = z < 5.0 ? z + 0.01 : -2.0;
  }
}
BENCHMARK(BM_MlTruncatedInfinite);

void BM_MlTruncatedIntegerBeta(benchmark::State& state) {
  const mfrac::MLParams p{1.0, mfrac::TruncationIndex::infinite()};
  for (auto _ : state) benchmark::DoNotOptimize(mfrac::ml_truncated(-7.5, p));
}
BENCHMARK(BM_MlTruncatedIntegerBeta);

void BM_DerivLimit(benchmark::State& state) {
  const mfrac::FracParams p{0.5, 1.0, mfrac::TruncationIndex::infinite()};
  const mfrac::RealFn f = [](double t) { return std::sin(t); };
  for (auto _ : state) benchmark::DoNotOptimize(mfrac::deriv_limit(f, p, 1.3).value);
}
BENCHMARK(BM_DerivLimit);

void BM_DerivClosedParsed(benchmark::State& state) {
  const mfrac::Expr e = mfrac::parse("exp(sin(t)) * t^2 - ln(1 + t)");
  const mfrac::DualFn f = [&e](double t) { return mfrac::eval_dual(e, t); };
  const mfrac::FracParams p{0.3, 2.0, mfrac::TruncationIndex::finite(3)};
  for (auto _ : state) benchmark::DoNotOptimize(mfrac::deriv_closed(f, p, 0.8));
}
BENCHMARK(BM_DerivClosedParsed);

void BM_MfracIntegralFromZero(benchmark::State& state) {
  const mfrac::FracParams p{0.3, 1.0, mfrac::TruncationIndex::infinite()};
  const mfrac::RealFn f = [](double x) { return std::cos(x); };
  for (auto _ : state) benchmark::DoNotOptimize(mfrac::mfrac_integral(f, 0.0, 2.0, p).value);
}
BENCHMARK(BM_MfracIntegralFromZero);

void BM_HeatSolveAndEvaluate(benchmark::State& state) {
  mfrac::HeatProblem prob;
  prob.k = 0.003;
  prob.alpha = 0.6;
  prob.initial_profile = mfrac::parse("50*x*(1-x)");
  prob.n_terms = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const mfrac::HeatSolution s = mfrac::solve_heat(prob);
    benchmark::DoNotOptimize(s(0.37, 150.0));
  }
}
BENCHMARK(BM_HeatSolveAndEvaluate)->Arg(11)->Arg(51);

}  // namespace

BENCHMARK_MAIN();
