#include "pqed/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "pqed/error.hpp"
#include "pqed/units.hpp"

namespace pqed {

namespace {
constexpr double kPi = std::numbers::pi;
}

void PvSpec::validate() const {
  if (!(pole > 0.0)) throw DomainError("PV pole must be positive");
  if (oscillation_period_count < 4) throw DomainError("PV oscillation period count must be >= 4");
}

double pv_shift_oracle(const SphereModel& m, const PvSpec& spec) {
  spec.validate();
  const double c = constants().speed_of_light;
  const double w0 = spec.pole;
  const double unit = c / m.radius;  // omega per unit of x = omega R / c
  const double x0 = w0 / unit;

  // Finite range [0, X] with X a multiple of pi well beyond the pole.
  int k = spec.oscillation_period_count;
  while (k * kPi < 4.0 * x0 + kPi) ++k;
  const double X = k * kPi;
  const double upper = X * unit;

  const double g0 = gamma(m, w0);
  const double g0sq = g0 * g0;
  // Subtracted integrand; smooth through the pole.
  auto f = [&](double w) {
    const double g = gamma(m, w);
    return (g * g - g0sq) / ((w0 - w) * (w0 + w));
  };

  QuadratureSpec q;
  q.rel_tol = 1e-13;
  q.abs_tol = 1e-300;
  q.max_subdivisions = 20000;
  std::vector<double> cuts;
  for (double s : {0.5, 0.9, 1.0, 1.1, 1.5}) cuts.push_back(s * w0);
  for (int i = 1; i < k; ++i) cuts.push_back(i * kPi * unit);
  const QuadratureResult body = integrate(f, 0.0, upper, q, cuts);

  // PV of the subtracted constant over [0, upper].
  const double log_part = g0sq * std::log((upper + w0) / (upper - w0)) / (2.0 * w0);

  // Asymptotic tail beyond X of x^2 j1^2/(x0^2 - x^2); next term is O(X^-5).
  const double op = m.plasma_frequency;
  const double tail_x = -1.0 / (2.0 * X) + (0.25 - (1.0 + x0 * x0) / 6.0) / (X * X * X);
  const double tail = 4.0 * op * op / kPi * tail_x;

  return body.value + log_part + tail;
}

SumRuleResult sum_rule_residual(const SphereModel& m, const EmitterGeometry& g, double cutoff,
                                const QuadratureSpec& spec) {
  check_geometry(m, g);
  if (!(cutoff >= 20.0 * m.plasma_frequency * (1.0 - 1e-12)))
    throw DomainError("sum-rule cutoff must be at least 20 Op");

  // (J_perp - J_free)/J_free reduces to the modified l=1 channel.
  // Differences at the rounding level of the two channels count as zero,
  // so a vanishing sphere gives an identically zero integrand.
  auto f = [&](double w) {
    const double gp = g_perp(m, g, w);
    const double free = free_l1_channel(g, w);
    const double d = gp * gp - free;
    if (std::abs(d) <= 64.0 * std::numeric_limits<double>::epsilon() * free) return 0.0;
    return d / j_free_space(w);
  };
  auto f_pos = [&](double w) { return std::max(f(w), 0.0); };

  QuadratureSpec q = spec;
  if (!q.refinement_center) {
    try {
      const double root = resonance_root(m);
      q.refinement_center = root;
      q.refinement_width = resonance_width(m, root);
    } catch (const BracketError&) {
      // No resonance in (0, Op): integrate without the hint.
    }
  }
  if (q.refinement_width && !(*q.refinement_width > 0.0)) {
    q.refinement_center.reset();
    q.refinement_width.reset();
  }
  // Sign changes are cheap to locate on the Op scale; add a coarse grid.
  std::vector<double> cuts;
  for (double s = 0.25; s < cutoff / m.plasma_frequency; s += 0.25) cuts.push_back(s * m.plasma_frequency);

  const QuadratureResult pos = integrate(f_pos, 0.0, cutoff, q, cuts);
  SumRuleResult r{};
  r.positive = pos.value;
  if (pos.value == 0.0) {
    r.total = 0.0;
    r.residual = 0.0;
    r.intervals = pos.intervals;
    r.tail_estimate = std::abs(f(cutoff)) * cutoff;
    return r;
  }
  QuadratureSpec qt = q;
  qt.abs_tol = std::max(q.abs_tol, q.rel_tol * pos.value);
  const QuadratureResult tot = integrate(f, 0.0, cutoff, qt, cuts);
  r.total = tot.value;
  r.residual = tot.value / pos.value;
  r.intervals = tot.intervals;
  r.tail_estimate = std::abs(f(cutoff)) * cutoff;
  return r;
}

NormalizationResult c1_normalization(const SphereModel& m, const QuadratureSpec& spec) {
  const double op = m.plasma_frequency;
  const double unit = constants().speed_of_light / m.radius;
  const double upper = std::max(200.0 * op, 400.0 * unit);
  auto f = [&](double w) {
    const double v = c1(m, w);
    return v * v;
  };
  QuadratureSpec q = spec;
  if (!q.refinement_center) {
    const double root = resonance_root(m);
    q.refinement_center = root;
    q.refinement_width = resonance_width(m, root);
  }
  std::vector<double> cuts;
  for (double s = 0.25; s < 4.0; s += 0.25) cuts.push_back(s * op);
  for (double x = kPi; x * unit < upper; x += kPi) cuts.push_back(x * unit);
  const QuadratureResult body = integrate(f, 0.0, upper, q, cuts);

  // Far above everything, c1^2 ~ gamma^2/w^4 with <cos^2> = 1/2.
  const double tail = 2.0 * op * op * unit / (3.0 * kPi * upper * upper * upper);
  return {body.value + tail, tail, upper, body.intervals};
}

double coulomb_overlap_polynomial(double R, double z) {
  const double a = std::abs(z);
  return 8.0 * std::pow(R, 5) / 5.0 - 2.0 * R * R * R * z * z / 3.0 + R * R * a * a * a / 4.0 -
         std::pow(a, 5) / 120.0;
}

namespace {

// Reduced potential of a uniform sphere of radius R centred at the origin.
double reduced_potential(double R, double r) {
  return r < R ? 0.5 * (3.0 * R * R - r * r) : R * R * R / r;
}

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Stratified average over the ball of radius R centred at the origin.
// Strata are a grid in (u = (s/R)^3, cos theta); the azimuth drops out by
// symmetry. Two samples per stratum give the variance estimate.
MonteCarloEstimate stratified_ball(double R, std::int64_t samples, std::uint64_t seed,
                                   const std::function<double(double s, double cos_t)>& g) {
  if (samples < 2) throw DomainError("Monte-Carlo sample count must be >= 2");
  const auto n = static_cast<std::int64_t>(std::ceil(std::sqrt(0.5 * static_cast<double>(samples))));
  std::mt19937_64 rng(seed);
  const double w = 1.0 / static_cast<double>(n * n);
  std::vector<double> row_mean(n), row_var(n);
  for (std::int64_t iu = 0; iu < n; ++iu) {
    double mean = 0.0, var = 0.0;
    for (std::int64_t ic = 0; ic < n; ++ic) {
      double v[2];
      for (double& vk : v) {
        const double u = (iu + unit_uniform(rng)) / n;
        const double ct = -1.0 + 2.0 * (ic + unit_uniform(rng)) / n;
        vk = g(R * std::cbrt(u), ct);
      }
      mean += 0.5 * (v[0] + v[1]);
      const double d = v[0] - v[1];
      var += 0.25 * d * d;  // variance of the two-sample stratum mean
    }
    row_mean[iu] = mean;
    row_var[iu] = var;
  }
  const double volume_over_pi = 4.0 * R * R * R / 3.0;
  MonteCarloEstimate e{};
  e.value = volume_over_pi * w * pairwise_sum(row_mean.data(), row_mean.size());
  e.std_error = volume_over_pi * w * std::sqrt(pairwise_sum(row_var.data(), row_var.size()));
  e.samples = 2 * n * n;
  return e;
}

}  // namespace

MonteCarloEstimate coulomb_overlap_oracle(double R, double z, std::int64_t samples, std::uint64_t seed) {
  if (!(R > 0.0)) throw DomainError("sphere radius must be positive");
  if (!(z >= 0.0 && z < 2.0 * R)) throw DomainError("displacement must satisfy 0 <= z < 2R");
  return stratified_ball(R, samples, seed, [&](double s, double ct) {
    return reduced_potential(R, std::sqrt(s * s + z * z + 2.0 * s * z * ct));
  });
}

MonteCarloEstimate coulomb_curvature_oracle(double R, double h, std::int64_t samples, std::uint64_t seed) {
  if (!(R > 0.0)) throw DomainError("sphere radius must be positive");
  if (!(h > 0.0 && h < R)) throw DomainError("finite-difference step must lie in (0, R)");
  // D(h) = 2 (E(h) - E(0)) / h^2; combine 2 D(h/2) - D(h) to cancel the O(h) term.
  return stratified_ball(R, samples, seed, [&](double s, double ct) {
    auto at = [&](double z) { return reduced_potential(R, std::sqrt(s * s + z * z + 2.0 * s * z * ct)); };
    const double e0 = at(0.0);
    const double d_full = 2.0 * (at(h) - e0) / (h * h);
    const double d_half = 8.0 * (at(0.5 * h) - e0) / (h * h);
    return 2.0 * d_half - d_full;
  });
}

}  // namespace pqed
