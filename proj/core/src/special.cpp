#include "mfrac/special.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>

#include "double_double.hpp"
#include "mfrac/errors.hpp"

namespace mfrac {

namespace {

// Taylor coefficients of ln Gamma(2 + z) about z = 0:
//   ln Gamma(2 + z) = (1 - gamma_E) z + sum_{k>=2} (-1)^k (zeta(k) - 1) / k z^k
// The coefficients fall off like 2^-k / k, so on |z| <= 1/2 the 29 terms
// below leave a truncation error under 1e-19.
constexpr double kLnGamma2Linear = 0.4227843350984671393934879;
constexpr std::array<double, 29> kLnGamma2Taylor = {
    0.3224670334241132182362,     -0.06735230105319809513325,
    0.020580808427784547879,      -0.007385551028673985266273,
    0.002890510330741523285753,   -0.001192753911703260977114,
    0.0005096695247430424223357,  -0.0002231547584535793797614,
    0.0000994575127818085337146,  -0.00004492623673813314170021,
    0.00002050721277567069155317, -0.000009439488275268395903987,
    0.000004374866789907487804182, -0.000002039215753801366236782,
    9.551412130407419832857e-7,   -4.492469198764566043294e-7,
    2.120718480555466586923e-7,   -1.004322482396809960872e-7,
    4.76981016936398056576e-8,    -2.271109460894316491032e-8,
    1.083865921489695409107e-8,   -5.183475041970046655121e-9,
    2.483674543802478317185e-9,   -1.192140140586091207443e-9,
    5.73136724167886201333e-10,   -2.759522885124233145178e-10,
    1.33047643742444894815e-10,   -6.422964563838100022082e-11,
    3.104424774732227276239e-11,
};

double ln_gamma_2_plus(double z) {
  double acc = 0.0;
  for (auto it = kLnGamma2Taylor.rbegin(); it != kLnGamma2Taylor.rend(); ++it) {
    acc = std::fma(acc, z, *it);
  }
  // acc now holds sum_{k>=2} c_k z^(k-2)
  return z * std::fma(acc, z, kLnGamma2Linear);
}

// Lanczos approximation with g = 671/128 and 14 terms (Numerical Recipes,
// 3rd ed.). Relative error of Gamma below 1e-15 for x >= 1; used here on
// x >= 2.5 where ln Gamma >= 0.28, so the absolute error translates into a
// relative error under 1e-14.
constexpr double kLanczosG = 671.0 / 128.0;
constexpr double kLanczosC0 = 0.999999999999997092;
constexpr std::array<double, 14> kLanczosCoeffs = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5,
};
constexpr double kSqrtTwoPi = 2.5066282746310005;

double ln_gamma_lanczos(double x) {
  double tmp = x + kLanczosG;
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = kLanczosC0;
  double y = x;
  for (double c : kLanczosCoeffs) {
    y += 1.0;
    ser += c / y;
  }
  return tmp + std::log(kSqrtTwoPi * ser / x);
}

// 0! .. 22! are exact in binary64.
constexpr int kMaxExactFactorial = 22;

double exact_factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

bool is_small_positive_integer(double beta, int& out) {
  if (!(beta >= 1.0) || beta > 64.0 || beta != std::floor(beta)) return false;
  out = static_cast<int>(beta);
  return true;
}

// Sum of the series terms k = first..i (or to convergence for an infinite
// index) in double-double precision.
detail::DoubleDouble series_sum(double z, const MLParams& p, std::uint64_t first) {
  using detail::DoubleDouble;
  DoubleDouble sum;
  if (z == 0.0) {
    if (first == 0) sum = sum + 1.0;
    return sum;
  }

  const bool infinite = p.trunc.is_infinite();
  const std::uint64_t last = infinite ? std::numeric_limits<std::uint64_t>::max() : p.trunc.value();
  if (first > last) return sum;

  int integer_beta = 0;
  const bool exact_ratio = is_small_positive_integer(p.beta, integer_beta);
  const double log_abs_z = std::log(std::abs(z));
  const bool negative = z < 0.0;

  // term k as a double-double. With integer beta the ratio of consecutive
  // terms is z divided by a product of integers, which keeps negative
  // arguments accurate far beyond what log-space terms allow.
  DoubleDouble term{1.0, 0.0};
  double previous_abs = 1.0;
  bool decreasing = false;

  for (std::uint64_t k = 0;; ++k) {
    if (k > 0) {
      if (exact_ratio) {
        term = term * z;
        const double base = static_cast<double>(integer_beta) * static_cast<double>(k - 1);
        for (int j = 1; j <= integer_beta; ++j) term = term / (base + j);
      } else {
        const double kd = static_cast<double>(k);
        const double magnitude = std::exp(kd * log_abs_z - ln_gamma(p.beta * kd + 1.0));
        term = {(negative && (k % 2 == 1)) ? -magnitude : magnitude, 0.0};
      }
    }
    const double term_abs = std::abs(term.hi);

    if (infinite && k > first && term_abs < 1e-16 * std::abs(sum.hi)) break;
    if (infinite && k >= static_cast<std::uint64_t>(kMaxSeriesTerms)) {
      throw ConvergenceError("ml_truncated: series for z = " + std::to_string(z) +
                             ", beta = " + std::to_string(p.beta) + " did not converge within " +
                             std::to_string(kMaxSeriesTerms) + " terms");
    }

    if (k >= first) sum = sum + term;

    if (k == last) break;
    // Past the peak the terms decrease monotonically; once they underflow
    // every later term is zero too.
    if (k > 0 && term_abs < previous_abs) decreasing = true;
    if (decreasing && term_abs == 0.0) break;
    previous_abs = term_abs;
  }
  return sum;
}

}  // namespace

std::string TruncationIndex::to_string() const {
  return infinite_ ? std::string("inf") : std::to_string(value_);
}

TruncationIndex TruncationIndex::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "INF" || text == "Infinity" || text == "oo") {
    return infinite();
  }
  std::uint64_t v = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ParameterError("truncation index must be a non-negative integer or 'inf', got '" + text +
                         "'");
  }
  return finite(v);
}

void validate(const MLParams& p) {
  if (!std::isfinite(p.beta) || p.beta <= 0.0) {
    throw ParameterError("beta must be a finite positive number, got " + std::to_string(p.beta));
  }
}

double ln_gamma(double x) {
  if (std::isnan(x) || x <= 0.0) {
    throw DomainError("ln_gamma: argument must be positive, got " + std::to_string(x));
  }
  if (std::isinf(x)) return x;
  if (x < 0.5) return ln_gamma(x + 1.0) - std::log(x);
  if (x < 1.5) {
    const double z = x - 1.0;
    return ln_gamma_2_plus(z) - std::log1p(z);
  }
  if (x < 2.5) return ln_gamma_2_plus(x - 2.0);
  return ln_gamma_lanczos(x);
}

double gamma_fn(double x) {
  if (x > 0.0 && x <= kMaxExactFactorial + 1 && x == std::floor(x)) {
    return exact_factorial(static_cast<int>(x) - 1);
  }
  return std::exp(ln_gamma(x));
}

double ml_truncated(double z, const MLParams& p) {
  validate(p);
  if (std::isnan(z)) throw DomainError("ml_truncated: z is NaN");
  return series_sum(z, p, 0).value();
}

double ml_truncated_m1(double z, const MLParams& p) {
  validate(p);
  if (std::isnan(z)) throw DomainError("ml_truncated_m1: z is NaN");
  return series_sum(z, p, 1).value();
}

}  // namespace mfrac
