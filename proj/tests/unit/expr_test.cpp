#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "mfrac/expr.hpp"

namespace {

using mfrac::Expr;
using mfrac::Function;
using mfrac::NodeKind;

Expr c(double v) { return Expr::constant(v); }
Expr x() { return Expr::variable(); }

TEST(Parse, PolynomialProfile) {
  const Expr want = Expr::mul(Expr::mul(c(50), x()), Expr::sub(c(1), x()));
  EXPECT_EQ(mfrac::parse("50*x*(1-x)"), want);
  EXPECT_EQ(mfrac::parse(" 50 * t * ( 1 - t ) "), want);
}

TEST(Parse, VariableAndConstants) {
  EXPECT_EQ(mfrac::parse("x").kind(), NodeKind::Variable);
  EXPECT_EQ(mfrac::parse("t"), mfrac::parse("x"));
  EXPECT_EQ(mfrac::parse("2.5e-3").constant_value(), 2.5e-3);
  EXPECT_EQ(mfrac::parse(".5").constant_value(), 0.5);
}

TEST(Parse, PowerOfCall) {
  const Expr want = Expr::pow(Expr::call(Function::Sin, Expr::mul(c(2), x())), c(2));
  const Expr e = mfrac::parse("sin(2*t)^2");
  EXPECT_EQ(e, want);
  EXPECT_DOUBLE_EQ(mfrac::eval(e, 0.7), std::sin(1.4) * std::sin(1.4));
}

TEST(Parse, PrecedenceAndAssociativity) {
  EXPECT_EQ(mfrac::eval(mfrac::parse("2^3^2"), 0), 512.0);
  EXPECT_EQ(mfrac::eval(mfrac::parse("1-2-3"), 0), -4.0);
  EXPECT_EQ(mfrac::eval(mfrac::parse("8/4/2"), 0), 1.0);
  EXPECT_EQ(mfrac::eval(mfrac::parse("1+2*3"), 0), 7.0);
  // unary minus binds tighter than '^' in this grammar
  EXPECT_EQ(mfrac::eval(mfrac::parse("-2^2"), 0), 4.0);
  EXPECT_EQ(mfrac::eval(mfrac::parse("--3"), 0), 3.0);
}

TEST(Parse, SyntaxErrorCarriesOffsetAndExpected) {
  try {
    mfrac::parse("1 + * 2");
    FAIL() << "expected SyntaxError";
  } catch (const mfrac::SyntaxError& e) {
    EXPECT_EQ(e.offset(), 4u);
    EXPECT_FALSE(e.expected().empty());
    EXPECT_EQ(e.found(), "'*'");
  }
  EXPECT_THROW(mfrac::parse("sin(x"), mfrac::SyntaxError);
  EXPECT_THROW(mfrac::parse("(1+2))"), mfrac::SyntaxError);
  EXPECT_THROW(mfrac::parse(""), mfrac::SyntaxError);
  EXPECT_THROW(mfrac::parse("sin x"), mfrac::SyntaxError);
}

TEST(Parse, UnknownIdentifier) {
  try {
    mfrac::parse("2*y + 1");
    FAIL() << "expected UnknownIdentifierError";
  } catch (const mfrac::UnknownIdentifierError& e) {
    EXPECT_EQ(e.identifier(), "y");
    EXPECT_EQ(e.offset(), 2u);
  }
  EXPECT_THROW(mfrac::parse("tan(x)"), mfrac::UnknownIdentifierError);
}

TEST(Print, RoundTripCorpus) {
  const std::vector<std::string> corpus = {
      "x", "50*x*(1-x)", "sin(2*t)^2", "-x^2", "2^3^2", "exp(-x)/(1+x)", "abs(x-0.1)",
      "sqrt(x)*ln(x+1)", "1e-300*x", "0.1+0.2", "cos(x)^-1.5", "x/(x/(x/2))", "-(-(-x))",
      "123456789.123456789*x"};
  for (const std::string& s : corpus) {
    const Expr e = mfrac::parse(s);
    EXPECT_EQ(mfrac::parse(mfrac::print(e)), e) << s << " printed as " << mfrac::print(e);
  }
}

TEST(Eval, Examples) {
  EXPECT_EQ(mfrac::eval(mfrac::parse("50*x*(1-x)"), 0.5), 12.5);
  EXPECT_EQ(mfrac::eval(mfrac::parse("x"), 3.2), 3.2);
  EXPECT_EQ(mfrac::eval(mfrac::parse("exp(0)"), 42.0), 1.0);
  EXPECT_EQ(mfrac::eval(mfrac::parse("(-2)^3"), 0), -8.0);
  EXPECT_EQ(mfrac::eval(mfrac::parse("x^-2"), -2.0), 0.25);
}

TEST(Eval, DomainErrorsNameTheNode) {
  try {
    mfrac::eval(mfrac::parse("1 + ln(x - 2)"), 1.0);
    FAIL() << "expected DomainError";
  } catch (const mfrac::DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("ln((x - 2))"), std::string::npos) << e.what();
  }
  EXPECT_THROW(mfrac::eval(mfrac::parse("sqrt(x)"), -1.0), mfrac::DomainError);
  EXPECT_THROW(mfrac::eval(mfrac::parse("1/x"), 0.0), mfrac::DomainError);
  EXPECT_THROW(mfrac::eval(mfrac::parse("x^0.5"), -4.0), mfrac::DomainError);
  EXPECT_THROW(mfrac::eval(mfrac::parse("x^-1"), 0.0), mfrac::DomainError);
}

TEST(EvalDual, Examples) {
  auto d = mfrac::eval_dual(mfrac::parse("x^2"), 3.0);
  EXPECT_EQ(d.val, 9.0);
  EXPECT_EQ(d.der, 6.0);
  d = mfrac::eval_dual(mfrac::parse("sin(x)"), 0.0);
  EXPECT_EQ(d.val, 0.0);
  EXPECT_EQ(d.der, 1.0);
  d = mfrac::eval_dual(mfrac::parse("50*x*(1-x)"), 0.25);
  EXPECT_EQ(d.val, 9.375);
  EXPECT_EQ(d.der, 25.0);
  d = mfrac::eval_dual(mfrac::parse("2^x"), 3.0);
  EXPECT_DOUBLE_EQ(d.der, 8.0 * std::log(2.0));
}

TEST(EvalDual, NonDifferentiablePoints) {
  EXPECT_THROW(mfrac::eval_dual(mfrac::parse("abs(x)"), 0.0), mfrac::DomainError);
  EXPECT_THROW(mfrac::eval_dual(mfrac::parse("sqrt(x)"), 0.0), mfrac::DomainError);
  EXPECT_EQ(mfrac::eval_dual(mfrac::parse("abs(x)"), -2.0).der, -1.0);
}

// Random trees over every node kind, depth <= 6.
class RandomExpr {
 public:
  explicit RandomExpr(std::uint64_t seed) : rng_(seed) {}

  Expr make(int depth) {
    std::uniform_int_distribution<int> pick(0, depth == 0 ? 1 : 9);
    switch (pick(rng_)) {
      case 0: return x();
      case 1: return c(std::uniform_real_distribution<double>(-3.0, 3.0)(rng_));
      case 2: return make(depth - 1) + make(depth - 1);
      case 3: return make(depth - 1) - make(depth - 1);
      case 4: return make(depth - 1) * make(depth - 1);
      case 5: return make(depth - 1) / make(depth - 1);
      case 6: return -make(depth - 1);
      case 7: return Expr::pow(make(depth - 1), c(std::uniform_int_distribution<int>(-2, 3)(rng_)));
      case 8: return Expr::pow(Expr::call(Function::Abs, make(depth - 1)) + c(0.5), c(0.7));
      default: {
        const Function fs[] = {Function::Sin, Function::Cos, Function::Exp,
                               Function::Ln,  Function::Sqrt, Function::Abs};
        const Function f = fs[std::uniform_int_distribution<int>(0, 5)(rng_)];
        return Expr::call(f, make(depth - 1));
      }
    }
  }

  double point() { return std::uniform_real_distribution<double>(-2.0, 2.0)(rng_); }

 private:
  std::mt19937_64 rng_;
};

double central_difference(const Expr& e, double t, double h) {
  return (mfrac::eval(e, t + h) - mfrac::eval(e, t - h)) / (2 * h);
}

TEST(EvalDual, MatchesCentralDifferenceOnRandomTrees) {
  RandomExpr gen(2024);
  int checked = 0;
  for (int n = 0; n < 4000 && checked < 500; ++n) {
    const Expr e = gen.make(6);
    const double t = gen.point();
    double fd = 0.0, fd_half = 0.0;
    mfrac::DualNumber d;
    try {
      d = mfrac::eval_dual(e, t);
      fd = central_difference(e, t, 1e-5);
      fd_half = central_difference(e, t, 5e-6);
    } catch (const mfrac::DomainError&) {
      continue;
    }
    if (!std::isfinite(d.val) || !std::isfinite(d.der) || std::abs(d.val) > 1e6 || std::abs(d.der) > 1e6) continue;
    // A singularity or kink near t shows up as step-size dependence.
    if (std::abs(fd - fd_half) > 1e-7 * (1 + std::abs(fd))) continue;
    ++checked;
    EXPECT_LE(std::abs(d.der - fd), 1e-6 * (1 + std::abs(d.der))) << mfrac::print(e) << " at t = " << t;
  }
  EXPECT_GE(checked, 500);
}

TEST(EvalDual, ValueIsBitwiseEval) {
  RandomExpr gen(77);
  int checked = 0;
  for (int n = 0; n < 2000; ++n) {
    const Expr e = gen.make(6);
    const double t = gen.point();
    double v = 0.0;
    try {
      v = mfrac::eval(e, t);
    } catch (const mfrac::DomainError&) {
      continue;
    }
    try {
      const double dv = mfrac::eval_dual(e, t).val;
      if (std::isnan(v)) {
        EXPECT_TRUE(std::isnan(dv));
      } else {
        EXPECT_EQ(dv, v) << mfrac::print(e) << " at t = " << t;
      }
      ++checked;
    } catch (const mfrac::DomainError&) {
      // eval_dual may additionally reject non-differentiable points
    }
  }
  EXPECT_GT(checked, 500);
}

TEST(Print, RoundTripRandomTrees) {
  RandomExpr gen(9);
  for (int n = 0; n < 500; ++n) {
    const Expr e = mfrac::parse(mfrac::print(gen.make(6)));
    EXPECT_EQ(mfrac::parse(mfrac::print(e)), e) << mfrac::print(e);
  }
}

}  // namespace
