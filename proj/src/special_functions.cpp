#include "pqed/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pqed/error.hpp"

namespace pqed {

BesselOrderRange::BesselOrderRange(int l) : l_max(l) {
  if (l < 1 || l > kMaxOrder)
    throw DomainError("Bessel order range must satisfy 1 <= l_max <= 200, got " + std::to_string(l));
}

double j0(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

namespace {
// 3 j1(x)/x as a nested series; the k-th factor is x^2 / (2k (2k+3)).
// Seven factors reach double precision for |x| < 0.5.
double three_j1_over_x_series(double x) {
  const double x2 = x * x;
  double acc = 1.0;
  for (int k = 7; k >= 1; --k) acc = 1.0 - x2 / (2.0 * k * (2.0 * k + 3.0)) * acc;
  return acc;
}

// 1 - 3 j1(x)/x without the leading cancellation.
double one_minus_series(double x) {
  const double x2 = x * x;
  double acc = 1.0;
  for (int k = 7; k >= 2; --k) acc = 1.0 - x2 / (2.0 * k * (2.0 * k + 3.0)) * acc;
  return x2 / 10.0 * acc;
}
}  // namespace

double j1_series(double x) { return x / 3.0 * three_j1_over_x_series(x); }

double j1_direct(double x) { return std::sin(x) / (x * x) - std::cos(x) / x; }

double j1(double x) {
  if (std::abs(x) < kJ1SeriesSwitch) return j1_series(x);
  return j1_direct(x);
}

double y0(double x) {
  if (x <= 0.0) throw DomainError("y0 requires x > 0");
  return -std::cos(x) / x;
}

double y1(double x) {
  if (x <= 0.0) throw DomainError("y1 requires x > 0");
  return -std::cos(x) / (x * x) - std::sin(x) / x;
}

// j1' = j0 - 2 j1/x
double j1_prime(double x) { return j0(x) - 2.0 * j1_over_x(x); }

double y1_prime(double x) { return y0(x) - 2.0 * y1(x) / x; }

double j1_over_x(double x) {
  if (std::abs(x) < kJ1SeriesSwitch) return three_j1_over_x_series(x) / 3.0;
  return j1(x) / x;
}

double one_minus_three_j1_over_x(double x) {
  if (std::abs(x) < kJ1SeriesSwitch) return one_minus_series(x);
  return 1.0 - 3.0 * j1(x) / x;
}

std::vector<double> jl_array(double x, BesselOrderRange range) {
  if (!(x >= 0.0)) throw DomainError("jl_array requires x >= 0");
  const int n = range.l_max;
  std::vector<double> out(n + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  out[0] = j0(x);
  out[1] = j1(x);
  if (x > n) {
    // Upward recurrence is stable while l < x.
    for (int l = 1; l < n; ++l) out[l + 1] = (2.0 * l + 1.0) / x * out[l] - out[l - 1];
    return out;
  }

  // Miller: recur downward from well above l_max with arbitrary seed values,
  // then normalize against whichever of j0, j1 is larger in magnitude.
  const int start = n + static_cast<int>(std::ceil(std::sqrt(40.0 * n))) + 10;
  constexpr double kBig = 1e250;
  double above = 0.0;
  double here = 1e-300;
  std::vector<double> raw(n + 1, 0.0);
  for (int l = start; l > 0; --l) {
    const double below = (2.0 * l + 1.0) / x * here - above;
    above = here;
    here = below;
    if (l - 1 <= n) raw[l - 1] = here;
    if (l <= n) raw[l] = above;
    if (std::abs(here) > kBig) {
      here /= kBig;
      above /= kBig;
      for (double& v : raw) v /= kBig;
    }
  }
  const double scale = std::abs(out[0]) >= std::abs(out[1]) ? out[0] / raw[0] : out[1] / raw[1];
  for (int l = 2; l <= n; ++l) out[l] = raw[l] * scale;
  return out;
}

double weighted_jl_sum(double x, int l_min, double tol) {
  if (!(x >= 0.0)) throw DomainError("weighted_jl_sum requires x >= 0");
  if (l_min != 1 && l_min != 2) throw DomainError("weighted_jl_sum supports l_min in {1, 2}");
  if (x == 0.0) return 0.0;

  int l_max = static_cast<int>(std::ceil(1.5 * x)) + 20;
  while (true) {
    if (l_max > BesselOrderRange::kMaxOrder) {
      throw ConvergenceError("weighted_jl_sum: order guard reached at x = " + std::to_string(x),
                             std::numeric_limits<double>::infinity());
    }
    const auto j = jl_array(x, BesselOrderRange(l_max));
    double sum = 0.0;
    // Sum from the top down so the small terms accumulate first.
    for (int l = l_max; l >= l_min; --l) sum += double(l) * (l + 1) * (2 * l + 1) * j[l] * j[l];
    const double last = double(l_max) * (l_max + 1) * (2 * l_max + 1) * j[l_max] * j[l_max];
    // Past the turning point successive terms shrink at least by this ratio.
    const double q = x * x / ((2.0 * l_max + 1.0) * (2.0 * l_max + 3.0)) * (l_max + 2.0) / l_max * (2.0 * l_max + 3.0) / (2.0 * l_max + 1.0);
    if (q < 0.5) {
      const double tail = last * q / (1.0 - q);
      if (tail <= tol * sum) return sum;
    }
    if (l_max == BesselOrderRange::kMaxOrder) l_max += 1;  // trips the guard above
    else l_max = std::min(2 * l_max, BesselOrderRange::kMaxOrder);
  }
}

}  // namespace pqed
