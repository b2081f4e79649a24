#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pqed/error.hpp"
#include "pqed/special_functions.hpp"
#include "support.hpp"

using namespace pqed;
using testing::big;
using testing::rel;

TEST_SUITE("special_functions") {
  TEST_CASE("j1 reference values") {
    const double pi = std::numbers::pi;
    CHECK(pqed::j1(0.0) == 0.0);
    CHECK(rel(pqed::j1(pi), 1.0 / pi) < 1e-14);
    const double ref = static_cast<double>(testing::jl_reference(1, big("1e-4")));
    CHECK(rel(pqed::j1(1e-4), ref) < 1e-12);
    CHECK(rel(pqed::j1(1e-4), 3.3333333e-5) < 1e-8);
  }

  TEST_CASE("j1 against the high-precision series on a log grid") {
    for (double lx = -6.0; lx <= 1.5; lx += 0.05) {
      const double x = std::pow(10.0, lx);
      const double ref = static_cast<double>(testing::jl_reference(1, big(x)));
      CHECK(rel(pqed::j1(x), ref) < 1e-13);
    }
  }

  TEST_CASE("series and direct branches of j1 agree around the switch") {
    for (double x = 0.8 * kJ1SeriesSwitch; x <= 1.2 * kJ1SeriesSwitch; x += 0.01 * kJ1SeriesSwitch)
      CHECK(rel(j1_series(x), j1_direct(x)) < 1e-12);
  }

  TEST_CASE("y1 values and domain") {
    const double pi = std::numbers::pi;
    CHECK(rel(pqed::y1(pi / 2), -2.0 / pi) < 1e-14);
    CHECK(rel(pqed::y1(pi), 1.0 / (pi * pi)) < 1e-14);
    CHECK(std::abs(pqed::y1(1e-3) * 1e-6 + 1.0) < 1e-5);
    CHECK_THROWS_AS(pqed::y1(0.0), DomainError);
    CHECK_THROWS_AS(pqed::y1(-1.0), DomainError);
  }

  TEST_CASE("Wronskian j1 y1' - j1' y1 = 1/x^2") {
    for (double lx = -1.0; lx <= 2.0; lx += 0.01) {
      const double x = std::pow(10.0, lx);
      const double w = pqed::j1(x) * y1_prime(x) - j1_prime(x) * pqed::y1(x);
      CHECK(rel(w, 1.0 / (x * x)) < 1e-10);
    }
  }

  TEST_CASE("jl_array at the origin and against references") {
    const auto z = jl_array(0.0, BesselOrderRange(6));
    CHECK(z[0] == 1.0);
    for (int l = 1; l <= 6; ++l) CHECK(z[l] == 0.0);

    const auto a = jl_array(1.0, BesselOrderRange(5));
    const double j5 = static_cast<double>(testing::jl_reference(5, big(1)));
    CHECK(rel(a[5], j5) < 1e-10);
    CHECK(rel(a[5], 9.2561e-5) < 1e-4);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(-2.0, 1.6);
    for (int trial = 0; trial < 40; ++trial) {
      const double x = std::pow(10.0, ux(rng));
      const int lmax = 3 + trial % 30;
      const auto v = jl_array(x, BesselOrderRange(lmax));
      CHECK(rel(v[1], pqed::j1(x)) < 1e-13);
      for (int l = 0; l <= lmax; ++l) {
        const double ref = static_cast<double>(testing::jl_reference(l, big(x)));
        if (std::abs(ref) > 1e-250) CHECK(rel(v[l], ref) < 1e-10);
      }
    }
  }

  TEST_CASE("jl_array upward branch beyond l_max") {
    const auto v = jl_array(37.5, BesselOrderRange(20));
    for (int l = 0; l <= 20; ++l)
      CHECK(std::abs(v[l] - static_cast<double>(testing::jl_reference(l, big(37.5)))) < 1e-13);
  }

  TEST_CASE("weighted sum identity") {
    CHECK(std::abs(weighted_jl_sum(1.0, 1) - 2.0 / 3.0) < 1e-10);
    CHECK(weighted_jl_sum(0.0, 1) == 0.0);
    CHECK(weighted_jl_sum(0.0, 2) == 0.0);
    const double j = pqed::j1(5.0);
    CHECK(std::abs(weighted_jl_sum(5.0, 2) - (2.0 * 25.0 / 3.0 - 6.0 * j * j)) < 1e-10);
    for (double lx = -2.0; lx <= std::log10(50.0) + 1e-12; lx += 0.02) {
      const double x = std::pow(10.0, lx);
      CHECK(rel(weighted_jl_sum(x, 1), 2.0 * x * x / 3.0) < 1e-9);
    }
  }

  TEST_CASE("order guards") {
    CHECK_THROWS_AS(BesselOrderRange(0), DomainError);
    CHECK_THROWS_AS(BesselOrderRange(201), DomainError);
    CHECK_NOTHROW(BesselOrderRange(200));
    CHECK_THROWS_AS(weighted_jl_sum(150.0, 1), ConvergenceError);
    CHECK_THROWS_AS(weighted_jl_sum(1.0, 3), DomainError);
  }

  TEST_CASE("small-argument helpers") {
    for (double x : {1e-6, 1e-3, 0.05, 0.21, 0.49, 0.51, 2.0}) {
      const big bx(x);
      const big t = 3 * testing::jl_reference(1, bx) / bx;
      CHECK(rel(one_minus_three_j1_over_x(x), static_cast<double>(1 - t)) < 1e-12);
      CHECK(rel(j1_over_x(x), static_cast<double>(t / 3)) < 1e-14);
    }
  }
}
