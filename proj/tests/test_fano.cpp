#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pqed/error.hpp"
#include "pqed/fano.hpp"
#include "pqed/special_functions.hpp"
#include "pqed/units.hpp"
#include "support.hpp"

using namespace pqed;
using testing::rel;

namespace {
constexpr double kPi = std::numbers::pi;
const double kC = 299792458.0;

// First positive zero of j1 by bisection on tan x = x.
double first_j1_zero() {
  double lo = 4.0, hi = 5.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (pqed::j1(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}
}  // namespace

TEST_SUITE("fano") {
  TEST_CASE("plasma frequency from the charge density") {
    // sqrt(rho e / (m_e eps0)) with the constants typed in
    const double e = 1.602176634e-19, me = 9.1093837015e-31, eps0 = 8.8541878128e-12;
    const double expected = std::sqrt(60e27 * e * e / (me * eps0));
    const double op = plasma_frequency(60.0);
    CHECK(rel(op, expected) < 1e-12);
    CHECK(angular_to_ev(op) == doctest::Approx(9.10).epsilon(2e-3));
    CHECK(m_to_nm(kC / op) == doctest::Approx(21.7).epsilon(3e-3));
    CHECK(rel(plasma_frequency(240.0), 2.0 * op) < 1e-12);
    CHECK_THROWS_AS(plasma_frequency(0.0), DomainError);
    CHECK_THROWS_AS(plasma_frequency(-1.0), DomainError);
    CHECK(angular_to_ev(plasma_frequency(58.9)) == doctest::Approx(9.02).epsilon(2e-3));
  }

  TEST_CASE("sphere model stores consistent plasma frequency") {
    const auto m = SphereModel::from_nm(2.0, 60.0);
    CHECK(m.radius == doctest::Approx(2e-9).epsilon(1e-15));
    CHECK(rel(plasma_frequency_si(m.charge_density), m.plasma_frequency) < 1e-12);
    CHECK_THROWS_AS(SphereModel::from_nm(0.0, 60.0), DomainError);
    CHECK_THROWS_AS(SphereModel::from_nm(1.0, -60.0), DomainError);
  }

  TEST_CASE("coupling function") {
    const auto m = SphereModel::from_nm(2.0, 60.0);
    const double pre = 2.0 * m.plasma_frequency * std::sqrt(m.radius / (kPi * kC));
    CHECK(gamma(m, 0.0) == 0.0);
    const double w = kPi * kC / m.radius;
    CHECK(rel(gamma(m, w), pre * w / kPi) < 1e-13);
    const double ws = 1e-3 * kC / m.radius;
    CHECK(rel(gamma(m, ws), pre * ws * ws * m.radius / (3.0 * kC)) < 1e-5);
    CHECK_THROWS_AS(gamma(m, -1.0), DomainError);
  }

  TEST_CASE("frequency shift limits and sign") {
    const auto m = SphereModel::from_nm(2.0, 60.0);
    const double op2 = m.plasma_frequency * m.plasma_frequency;
    const double w = 1e-3 * kC / m.radius;
    CHECK(std::abs(shift_F(m, w) + 2.0 * op2 / 3.0) / op2 < 1e-5);
    CHECK(shift_F_limit0(m) == doctest::Approx(-2.0 * op2 / 3.0));
    // negative below the first zero of y1 (x ~ 2.798), sign of j1 y1 beyond
    for (double x = 0.01; x < 2.79; x += 0.01) CHECK(shift_F(m, x * kC / m.radius) < 0.0);
    for (double x = 2.81; x < 12.0; x += 0.07) {
      const double s = pqed::j1(x) * pqed::y1(x);
      if (std::abs(s) > 1e-6) CHECK((shift_F(m, x * kC / m.radius) < 0.0) == (s < 0.0));
    }
    CHECK_THROWS_AS(shift_F(m, 0.0), DomainError);
  }

  TEST_CASE("analytic derivative of the shift matches central differences") {
    const auto m = SphereModel::from_nm(5.0, 60.0);
    for (double s : {0.1, 0.5, 0.577, 1.3, 4.0}) {
      const double w = s * m.plasma_frequency, h = 1e-5 * w;
      const double fd = (shift_F(m, w + h) - shift_F(m, w - h)) / (2.0 * h);
      CHECK(std::abs(shift_F_derivative(m, w) - fd) <= 1e-6 * std::abs(fd) + 1e-9 * m.plasma_frequency);
    }
  }

  TEST_CASE("eigenmode weight vanishes at zeros of j1") {
    const auto m = SphereModel::from_nm(5.0, 60.0);
    const double x1 = first_j1_zero();
    CHECK(x1 == doctest::Approx(4.4934).epsilon(1e-4));
    double peak = 0.0;
    for (double s = 0.1; s < 3.0; s += 0.01) peak = std::max(peak, std::abs(c1(m, s * m.plasma_frequency)));
    CHECK(std::abs(c1(m, x1 * kC / m.radius)) < 1e-12 * peak);
    const auto f = evaluate(m, x1 * kC / m.radius);
    CHECK(std::abs(std::abs(f.detuning_d) - 1.0) < 1e-12);
  }

  TEST_CASE("c1 squared peaks at the resonance root, near Op/sqrt3 for a small sphere") {
    const auto m = SphereModel::from_nm(0.5, 60.0);
    const double root = resonance_root(m);
    const double width = resonance_width(m, root);
    double best = 0.0, arg = 0.0;
    for (int i = -2000; i <= 2000; ++i) {
      const double w = root + width * i / 400.0;
      const double v = c1(m, w);
      if (v * v > best) best = v * v, arg = w;
    }
    CHECK(std::abs(arg - root) < 0.01 * width);
    CHECK(rel(arg, m.plasma_frequency / std::sqrt(3.0)) < 5e-3);
  }

  TEST_CASE("cancellation-safe auxiliary D") {
    const auto m = SphereModel::from_nm(0.5, 60.0);
    CHECK(std::abs(detuning_d(m, 10.0 * m.plasma_frequency) - 1.0) < 1e-3);
    CHECK(std::abs(detuning_d(m, resonance_root(m))) < 1e-8);
    for (double s = 0.05; s < 6.0; s += 0.013) {
      const auto f = evaluate(m, s * m.plasma_frequency);
      if (f.gamma == 0.0) continue;
      const double damp = kPi / (2.0 * f.omega) * f.gamma * f.gamma;
      CHECK(std::abs(f.detuning_d * f.detuning_d + std::pow(damp * f.c1 / f.gamma, 2) - 1.0) < 1e-12);
      // D = c1 h / gamma where gamma != 0
      CHECK(std::abs(f.detuning_d - f.c1 * f.resonance / f.gamma) < 1e-12);
    }
    CHECK_THROWS_AS(detuning_d(m, 0.0), DomainError);
    CHECK_THROWS_AS(c1(m, -1.0), DomainError);
  }

  TEST_CASE("sign and range invariants over a model grid") {
    for (double R : {1.0, 2.5, 10.0}) {
      for (double rho : {30.0, 60.0}) {
        const auto m = SphereModel::from_nm(R, rho);
        for (double s = 0.01; s < 20.0; s *= 1.03) {
          const auto f = evaluate(m, s * m.plasma_frequency);
          CHECK(f.c1 * f.gamma >= 0.0);
          CHECK(std::abs(f.detuning_d) <= 1.0);
          const double damp = kPi / (2.0 * f.omega) * f.gamma * f.gamma;
          CHECK(f.resonance * f.resonance + damp * damp > 0.0);
        }
      }
    }
  }

  TEST_CASE("resonance root") {
    const auto small = SphereModel::from_nm(0.05, 60.0);
    CHECK(rel(resonance_root(small), small.plasma_frequency / std::sqrt(3.0)) < 1e-4);

    const auto m = SphereModel::from_nm(2.5, 60.0);
    const double r = resonance_root(m) / m.plasma_frequency;
    CHECK(r > 0.57);
    CHECK(r < 0.58);

    const double root = resonance_root(m);
    CHECK(resonance_function(m, root * (1.0 - 1e-10)) < 0.0);
    CHECK(resonance_function(m, root * (1.0 + 1e-10)) > 0.0);

    double prev = 1e300;
    for (double R = 1.0; R <= 20.0; R += 0.5) {
      const auto mr = SphereModel::from_nm(R, 60.0);
      const double w = resonance_root(mr);
      CHECK(w < prev);
      prev = w;
    }
  }

  TEST_CASE("narrow-resonance width") {
    const auto m = SphereModel::from_nm(2.0, 60.0);
    const double root = resonance_root(m);
    const double g = gamma(m, root);
    CHECK(rel(resonance_width(m), kPi * g * g / (root * resonance_slope(m, root))) < 1e-12);
    CHECK(resonance_width(m) > 0.0);
  }
}
