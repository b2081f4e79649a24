#pragma once

#include <vector>

namespace pqed {

struct BesselOrderRange {
  int l_max;
  explicit BesselOrderRange(int l);
  static constexpr int kMaxOrder = 200;
};

// Below this argument j1 switches to its Taylor series.
inline constexpr double kJ1SeriesSwitch = 0.5;

double j0(double x);
double j1(double x);
double j1_series(double x);
double j1_direct(double x);
double y0(double x);
double y1(double x);
double j1_prime(double x);
double y1_prime(double x);

// j1(x)/x, finite at the origin (-> 1/3).
double j1_over_x(double x);
// 1 - 3 j1(x)/x, accurate when x is small.
double one_minus_three_j1_over_x(double x);

// j_0(x) .. j_lmax(x).
std::vector<double> jl_array(double x, BesselOrderRange range);

// sum_{l >= l_min} l(l+1)(2l+1) j_l(x)^2, truncated once the tail estimate
// drops below tol relative to the partial sum. From l_min = 1 the sum is
// 2x^2/3; this is the weight the on-axis tm multipole amplitudes carry.
double weighted_jl_sum(double x, int l_min, double tol = 1e-16);

}  // namespace pqed
