#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

namespace testing {

// About 265 bits of mantissa.
using big = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<80>>;

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// j_l(x) from its power series, x^l sum_k (-x^2/2)^k / (k! (2l+2k+1)!!).
inline big jl_reference(int l, const big& x) {
  big dfact = 1;
  for (int k = 1; k <= 2 * l + 1; k += 2) dfact *= k;
  big term = boost::multiprecision::pow(x, l) / dfact;
  big sum = term;
  const big h = -x * x / 2;
  for (int k = 1; k < 400; ++k) {
    term *= h / (k * big(2 * l + 2 * k + 1));
    sum += term;
    if (abs(term) < abs(sum) * big("1e-70") && k > 2) break;
  }
  return sum;
}

// y_1(x) = -cos x / x^2 - sin x / x at high precision.
inline big y1_reference(const big& x) { return -cos(x) / (x * x) - sin(x) / x; }

}  // namespace testing
