#pragma once

#include <cstdint>

#include "pqed/fano.hpp"
#include "pqed/quadrature.hpp"
#include "pqed/spectral.hpp"

namespace pqed {

struct PvSpec {
  double pole;                       // rad/s
  int oscillation_period_count = 64;  // finite range ends at k*pi in units of c/R

  void validate() const;
};

// F(omega) by direct principal-value quadrature of gamma^2/(omega^2 - w^2).
double pv_shift_oracle(const SphereModel& m, const PvSpec& spec);

struct SumRuleResult {
  double residual;      // total / positive part
  double total;         // integral of (J_perp - J_free)/J_free up to the cutoff, rad/s
  double positive;      // integral of its positive part
  double tail_estimate; // |integrand(cutoff)| * cutoff, a size hint for what lies beyond
  int intervals;
};

SumRuleResult sum_rule_residual(const SphereModel& m, const EmitterGeometry& g, double cutoff,
                                const QuadratureSpec& spec = {});

struct NormalizationResult {
  double value;      // integral of c1^2 over (0, inf)
  double tail;       // analytic estimate added for (upper, inf)
  double upper;      // rad/s
  int intervals;
};

NormalizationResult c1_normalization(const SphereModel& m, const QuadratureSpec& spec = {});

struct MonteCarloEstimate {
  double value;
  double std_error;
  std::int64_t samples;
};

// (1/pi) * integral over a sphere of radius R displaced by z along the axis
// of the reduced potential of a concentric uniform sphere:
// (3R^2 - r^2)/2 inside, R^3/r outside. Units of length^5.
MonteCarloEstimate coulomb_overlap_oracle(double radius, double displacement, std::int64_t samples,
                                          std::uint64_t seed);

// Second derivative of the overlap at zero displacement from a Richardson
// combination of finite differences with steps h and h/2 on common samples.
MonteCarloEstimate coulomb_curvature_oracle(double radius, double step, std::int64_t samples,
                                            std::uint64_t seed);

// Closed form of the overlap, length^5.
double coulomb_overlap_polynomial(double radius, double displacement);

}  // namespace pqed
