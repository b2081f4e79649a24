#include "pqed/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "pqed/error.hpp"

namespace pqed {

namespace {

constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for kNodes[1], [3], [5], [7].
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool at_roundoff;  // error estimate is no larger than rounding noise
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kron = fc * kKronrod[7];
  double gauss = fc * kGauss[3];
  double mag = std::abs(fc) * kKronrod[7];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double lo = f(center - dx), hi = f(center + dx);
    kron += kKronrod[i] * (lo + hi);
    mag += kKronrod[i] * (std::abs(lo) + std::abs(hi));
    if (i % 2 == 1) gauss += kGauss[i / 2] * (lo + hi);
  }
  const double err = std::abs((kron - gauss) * half);
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  Panel p{a, b, kron * half, err, err <= 50.0 * kEps * mag * std::abs(half)};
  if (!std::isfinite(p.value)) throw ConvergenceError("non-finite integrand value", INFINITY);
  return p;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw DomainError("quadrature tolerances must be positive");
  if (max_subdivisions < 1) throw DomainError("max_subdivisions must be positive");
  if (refinement_center && !(refinement_width && *refinement_width > 0.0))
    throw DomainError("refinement width must be positive when a center is given");
}

std::vector<double> refinement_breakpoints(double center, double width, double a, double b) {
  std::vector<double> out;
  if (!(center > a && center < b)) {
    // Feature outside the range: only its near edge matters.
    return out;
  }
  out.push_back(center);
  for (double k = 0.25; k < 1e7; k *= 4.0) {
    for (double s : {-1.0, 1.0}) {
      const double x = center + s * k * width;
      if (x > a && x < b) out.push_back(x);
    }
  }
  return out;
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec, const std::vector<double>& breakpoints) {
  spec.validate();
  if (!(b > a)) {
    if (a == b) return {0.0, 0.0, 0};
    throw DomainError("integrate requires a <= b");
  }

  std::vector<double> cuts{a, b};
  for (double x : breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  if (spec.refinement_center) {
    for (double x : refinement_breakpoints(*spec.refinement_center, *spec.refinement_width, a, b))
      cuts.push_back(x);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Panel> heap;
  double value = 0.0, error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p = gk15(f, cuts[i], cuts[i + 1]);
    value += p.value;
    error += p.error;
    heap.push(p);
  }

  auto done = [&] { return error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value)); };
  while (!done()) {
    if (static_cast<int>(heap.size()) >= spec.max_subdivisions) {
      throw ConvergenceError("adaptive quadrature hit the subdivision limit (error estimate " +
                                 std::to_string(error) + ")",
                             error);
    }
    Panel worst = heap.top();
    // Splitting cannot beat rounding noise, and no other panel is worse.
    if (worst.at_roundoff) break;
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval at machine resolution
    heap.pop();
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum in interval order so the result does not depend on heap history.
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  std::vector<double> vals(panels.size()), errs(panels.size());
  for (std::size_t i = 0; i < panels.size(); ++i) {
    vals[i] = panels[i].value;
    errs[i] = panels[i].error;
  }
  return {pairwise_sum(vals.data(), vals.size()), pairwise_sum(errs.data(), errs.size()),
          static_cast<int>(panels.size())};
}

}  // namespace pqed
