#include "mfrac/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "mfrac/errors.hpp"

namespace mfrac {

namespace {

// Kronrod nodes on [0, 1] of the symmetric rule on [-1, 1]; odd positions
// (1, 3, 5) are the 7-point Gauss nodes, position 7 is the centre.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Segment {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  int depth = 0;
};

// One 15-point Kronrod evaluation with the QUADPACK error heuristic.
Segment evaluate_segment(const std::function<double(double)>& f, double a, double b, int depth) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_centre = f(centre);

  double result_k = f_centre * kWgk[7];
  double result_g = f_centre * kWg[3];
  double result_abs = std::abs(result_k);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double lo = f(centre - dx);
    const double hi = f(centre + dx);
    f1[j] = lo;
    f2[j] = hi;
    result_k += kWgk[j] * (lo + hi);
    result_abs += kWgk[j] * (std::abs(lo) + std::abs(hi));
    if (j % 2 == 1) result_g += kWg[j / 2] * (lo + hi);
  }

  const double mean = 0.5 * result_k;
  double result_asc = kWgk[7] * std::abs(f_centre - mean);
  for (int j = 0; j < 7; ++j) {
    result_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }

  const double abs_half = std::abs(half);
  result_k *= half;
  result_abs *= abs_half;
  result_asc *= abs_half;

  double err = std::abs((result_k - result_g * half));
  if (result_asc != 0.0 && err != 0.0) {
    err = result_asc * std::min(1.0, std::pow(200.0 * err / result_asc, 1.5));
  }
  const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * result_abs;
  if (roundoff > std::numeric_limits<double>::min()) err = std::max(err, roundoff);

  if (!std::isfinite(result_k)) {
    throw DomainError("integrand is not finite on [" + std::to_string(a) + ", " +
                      std::to_string(b) + "]");
  }
  return {a, b, result_k, err, depth};
}

struct LargerError {
  bool operator()(const Segment& x, const Segment& y) const { return x.error < y.error; }
};

}  // namespace

QuadratureResult integrate_gk15(const std::function<double(double)>& f, double a, double b,
                                const QuadratureOptions& opts) {
  if (std::isnan(a) || std::isnan(b)) throw DomainError("integrate_gk15: NaN limit");
  if (a == b) return {0.0, 0.0, 1};

  std::priority_queue<Segment, std::vector<Segment>, LargerError> heap;
  std::vector<Segment> done;  // segments that cannot be refined further
  heap.push(evaluate_segment(f, a, b, 0));

  double total = heap.top().value;
  double total_error = heap.top().error;
  int live = 1;

  auto tolerance = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };

  bool capped = false;
  while (!heap.empty() && total_error > tolerance()) {
    Segment worst = heap.top();
    if (worst.depth >= opts.max_depth || live >= opts.max_intervals) {
      capped = true;
      break;
    }
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval cannot be split in floating point; park it.
      done.push_back(worst);
      if (heap.empty()) break;
      continue;
    }
    const Segment left = evaluate_segment(f, worst.a, mid, worst.depth + 1);
    const Segment right = evaluate_segment(f, mid, worst.b, worst.depth + 1);
    total += (left.value + right.value) - worst.value;
    total_error += (left.error + right.error) - worst.error;
    heap.push(left);
    heap.push(right);
    ++live;
  }

  // Recompute the sums in a fixed order so the result does not carry the
  // incremental update history.
  while (!heap.empty()) {
    done.push_back(heap.top());
    heap.pop();
  }
  std::sort(done.begin(), done.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  double value = 0.0;
  double error = 0.0;
  for (const Segment& s : done) {
    value += s.value;
    error += s.error;
  }

  QuadratureResult result{value, error, static_cast<int>(done.size())};
  if (error > std::max(opts.abs_tol, opts.rel_tol * std::abs(value))) {
    throw ToleranceError("adaptive quadrature on [" + std::to_string(a) + ", " + std::to_string(b) +
                             "] stopped at error estimate " + std::to_string(error) +
                             (capped ? " (subdivision limit reached)" : ""),
                         value, error);
  }
  return result;
}

}  // namespace mfrac
