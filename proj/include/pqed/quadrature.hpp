#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace pqed {

struct QuadratureSpec {
  double abs_tol = 1e-300;
  double rel_tol = 1e-10;
  int max_subdivisions = 5000;
  // Optional hint: extra breakpoints are placed around a narrow feature.
  std::optional<double> refinement_center;
  std::optional<double> refinement_width;

  void validate() const;
};

struct QuadratureResult {
  double value;
  double error;
  int intervals;
};

// Breakpoints at center +- width * {0.25, 1, 4, 16, ...} that fall inside (a, b).
std::vector<double> refinement_breakpoints(double center, double width, double a, double b);

// Globally adaptive Gauss-Kronrod 7/15 on [a, b]. The interval is first split
// at the given breakpoints and at the refinement hint in spec. Throws
// ConvergenceError when max_subdivisions is reached.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec, const std::vector<double>& breakpoints = {});

// Sum with pairwise (cascade) reduction; order-deterministic.
double pairwise_sum(const double* v, std::size_t n);

}  // namespace pqed
