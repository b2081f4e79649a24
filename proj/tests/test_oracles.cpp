#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pqed/error.hpp"
#include "pqed/fano.hpp"
#include "pqed/oracles.hpp"
#include "pqed/quadrature.hpp"
#include "pqed/spectral.hpp"
#include "support.hpp"

using namespace pqed;
using testing::rel;

namespace {
constexpr double kPi = std::numbers::pi;
const double kC = 299792458.0;

// Integral of the pole-subtracted integrand over [pole - d, pole + d].
double window_contribution(const SphereModel& m, double pole, double d) {
  const double g0 = gamma(m, pole);
  QuadratureSpec spec;
  spec.rel_tol = 1e-13;
  auto f = [&](double w) {
    if (w == pole) return 0.0;
    const double g = gamma(m, w);
    return (g * g - g0 * g0) / (pole * pole - w * w);
  };
  return integrate(f, pole - d, pole + d, spec, {pole}).value;
}
}  // namespace

TEST_SUITE("oracles") {
  TEST_CASE("principal-value shift matches the closed form") {
    const auto m = SphereModel::from_nm(2.0, 60.0);
    const double w = 0.5 * m.plasma_frequency;
    CHECK(rel(pv_shift_oracle(m, {w}), shift_F(m, w)) < 1e-6);

    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> radius(0.5, 10.0), density(10.0, 100.0), freq(0.05, 3.0);
    for (int i = 0; i < 20; ++i) {
      const auto mi = SphereModel::from_nm(radius(rng), density(rng));
      const double wi = freq(rng) * mi.plasma_frequency;
      INFO(mi.radius, " ", wi / mi.plasma_frequency);
      CHECK(rel(pv_shift_oracle(mi, {wi}), shift_F(mi, wi)) < 1e-6);
    }
  }

  TEST_CASE("principal-value shift: small-frequency limit") {
    const auto m = SphereModel::from_nm(2.0, 60.0);
    const double w = 1e-2 * kC / m.radius;
    const double limit = -2.0 * m.plasma_frequency * m.plasma_frequency / 3.0;
    CHECK(rel(pv_shift_oracle(m, {w}), limit) < 1e-4);
  }

  TEST_CASE("principal-value shift: window contribution is odd in the width") {
    const auto m = SphereModel::from_nm(2.0, 60.0);
    const double pole = 0.5 * m.plasma_frequency;
    const double d = 0.02 * pole;
    // c(d) = a d + b d^3 + ...; c(d) - 2 c(d/2) removes the linear term
    const double e1 = window_contribution(m, pole, d) - 2.0 * window_contribution(m, pole, d / 2);
    const double e2 = window_contribution(m, pole, d / 2) - 2.0 * window_contribution(m, pole, d / 4);
    CHECK(e1 / e2 == doctest::Approx(8.0).epsilon(0.02));
  }

  TEST_CASE("principal-value options are validated") {
    const auto m = SphereModel::from_nm(2.0, 60.0);
    CHECK_THROWS_AS(pv_shift_oracle(m, {0.0}), DomainError);
    CHECK_THROWS_AS(pv_shift_oracle(m, {m.plasma_frequency, 2}), DomainError);
    const double w = 0.7 * m.plasma_frequency;
    CHECK(rel(pv_shift_oracle(m, {w, 8}), pv_shift_oracle(m, {w, 256})) < 1e-7);
  }

  TEST_CASE("sum rule residual") {
    const auto m = SphereModel::from_nm(2.0, 60.0);
    const auto g = EmitterGeometry::at_distance_nm(4.0);
    const double op = m.plasma_frequency;
    const auto r20 = sum_rule_residual(m, g, 20.0 * op);
    const auto r35 = sum_rule_residual(m, g, 35.0 * op);
    const auto r50 = sum_rule_residual(m, g, 50.0 * op);
    CHECK(std::abs(r50.residual) < 1e-2);
    CHECK(std::abs(r35.residual) < std::abs(r20.residual));
    CHECK(std::abs(r50.residual) < std::abs(r35.residual));
    CHECK(r50.positive > 0.0);
    CHECK(rel(r50.residual, r50.total / r50.positive) < 1e-15);
    CHECK(r50.tail_estimate >= 0.0);

    const auto vac = SphereModel::from_nm(2.0, 1e-30);
    const auto rv = sum_rule_residual(vac, g, 50.0 * vac.plasma_frequency);
    CHECK(rv.residual == 0.0);
    CHECK_THROWS_AS(sum_rule_residual(m, g, 19.0 * op), DomainError);
  }

  TEST_CASE("eigenmode weights are normalized") {
    for (double R : {1.0, 2.5, 10.0}) {
      for (double rho : {30.0, 60.0}) {
        const auto m = SphereModel::from_nm(R, rho);
        const auto n = c1_normalization(m);
        INFO(R, " ", rho);
        CHECK(std::abs(n.value - 1.0) < 1e-4);
        CHECK(n.tail > 0.0);
        CHECK(n.tail < 1e-6);
      }
    }
  }

  TEST_CASE("narrow-resonance Lorentzian carries the full weight") {
    // c1^2 ~ gamma^2 / (h'^2 (w - w0)^2 + (pi gamma^2 / 2 w0)^2) near the root,
    // with area 2 w0 / h'. The slope comes from central differences of h.
    const auto m = SphereModel::from_nm(0.5, 60.0);
    const double root = resonance_root(m);
    const double dh = 1e-6 * root;
    const double slope = (resonance_function(m, root + dh) - resonance_function(m, root - dh)) / (2.0 * dh);
    CHECK(std::abs(2.0 * root / slope - 1.0) < 2e-2);
  }

  TEST_CASE("Coulomb overlap Monte Carlo") {
    const double R = 1.0;
    for (double z : {0.0, 0.5, 1.0, 1.5}) {
      const auto e = coulomb_overlap_oracle(R, z, 2'000'000, 7);
      INFO(z, " ", e.value, " +- ", e.std_error);
      CHECK(e.std_error > 0.0);
      CHECK(std::abs(e.value - coulomb_overlap_polynomial(R, z)) < 3.0 * e.std_error);
    }
    CHECK(coulomb_overlap_polynomial(R, 0.0) == doctest::Approx(1.6));
    CHECK(coulomb_overlap_polynomial(R, 1.0) == doctest::Approx(1.175));
    CHECK(rel(coulomb_overlap_polynomial(2.0, 1.0), 32.0 * coulomb_overlap_polynomial(1.0, 0.5)) < 1e-14);

    const auto a = coulomb_overlap_oracle(R, 0.5, 100'000, 3);
    const auto b = coulomb_overlap_oracle(R, 0.5, 100'000, 3);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
    const auto c = coulomb_overlap_oracle(R, 0.5, 100'000, 4);
    CHECK(c.value != a.value);
    CHECK(std::abs(c.value - a.value) < 5.0 * std::hypot(a.std_error, c.std_error));

    CHECK_THROWS_AS(coulomb_overlap_oracle(R, 2.0, 1000, 1), DomainError);
    CHECK_THROWS_AS(coulomb_overlap_oracle(R, -0.1, 1000, 1), DomainError);
    CHECK_THROWS_AS(coulomb_overlap_oracle(0.0, 0.0, 1000, 1), DomainError);
  }

  TEST_CASE("Coulomb restoring curvature") {
    const double R = 1.0;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto e = coulomb_curvature_oracle(R, 0.05, 2'000'000, seed);
      INFO(seed, " ", e.value, " +- ", e.std_error);
      CHECK(std::abs(e.value + 4.0 * R * R * R / 3.0) < 5.0 * e.std_error);
    }
    CHECK_THROWS_AS(coulomb_curvature_oracle(R, 0.0, 1000, 1), DomainError);
  }
}
