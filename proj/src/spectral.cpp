#include "pqed/spectral.hpp"

#include <cmath>
#include <iostream>
#include <numbers>

#include "pqed/error.hpp"
#include "pqed/special_functions.hpp"
#include "pqed/units.hpp"

namespace pqed {

namespace {
constexpr double kPi = std::numbers::pi;

// 1 + x^2 y1(x) = 1 - cos x - x sin x
double one_plus_x2_y1(double x) {
  if (x < 0.1) {
    const double x2 = x * x;
    return x2 * (-0.5 + x2 * (1.0 / 8.0 + x2 * (-1.0 / 144.0 + x2 / 5760.0)));
  }
  const double s = std::sin(0.5 * x);
  return 2.0 * s * s - x * std::sin(x);
}

// 1/3 + x_e^2 y1(x_e) j1(x_s)/x_s, which vanishes like x^2 in the
// quasistatic limit; assembled from the small pieces to avoid cancellation.
double coulomb_bracket(double xs, double xe) {
  const double a = -one_minus_three_j1_over_x(xs) / 3.0;  // j1(xs)/xs - 1/3
  const double b = one_plus_x2_y1(xe);                    // xe^2 y1(xe) + 1
  return b / 3.0 - a + a * b;
}
}  // namespace

EmitterGeometry EmitterGeometry::at_distance_nm(double distance_nm) {
  if (!(distance_nm > 0.0)) throw GeometryError("emitter distance must be positive");
  return EmitterGeometry{nm_to_m(distance_nm)};
}

EmitterGeometry EmitterGeometry::at_separation_nm(const SphereModel& m, double separation_nm) {
  if (!(separation_nm > 0.0)) throw GeometryError("emitter-surface separation must be positive");
  EmitterGeometry g{m.radius + nm_to_m(separation_nm)};
  check_geometry(m, g);
  return g;
}

void check_geometry(const SphereModel& m, const EmitterGeometry& g) {
  if (!(g.distance > m.radius + 1e-12))
    throw GeometryError("emitter must lie outside the sphere (|r_e| > R_s)");
}

double j_free_space(double omega) {
  if (!(omega >= 0.0)) throw DomainError("j_free_space requires omega >= 0");
  const auto& k = constants();
  const double c = k.speed_of_light;
  return omega * omega * omega / (6.0 * kPi * kPi * k.reduced_planck * k.vacuum_permittivity * c * c * c);
}

double j_parallel(const SphereModel& m, const EmitterGeometry& g, double omega) {
  check_geometry(m, g);
  const auto& k = constants();
  const double c1v = c1(m, omega);
  const double op = m.plasma_frequency;
  const double r3 = g.distance * g.distance * g.distance;
  return op * op * m.radius * m.radius * m.radius * c1v * c1v /
         (6.0 * kPi * k.reduced_planck * omega * k.vacuum_permittivity * r3 * r3);
}

double g_perp(const SphereModel& m, const EmitterGeometry& g, double omega) {
  check_geometry(m, g);
  const auto& k = constants();
  const double c = k.speed_of_light;
  const double r = g.distance;
  const double R = m.radius;
  const double xs = omega * R / c;
  const double xe = omega * r / c;
  const FanoEvaluation f = evaluate(m, omega);

  const double pre = std::sqrt(3.0 * omega * omega * omega /
                               (2.0 * kPi * kPi * k.reduced_planck * k.vacuum_permittivity * c)) / r;
  const double photon = f.detuning_d * j1(xe) / omega;
  const double coulomb = f.c1 * m.plasma_frequency * std::sqrt(kPi * c * R * R * R) /
                         (r * r * omega * omega) * coulomb_bracket(xs, xe);
  return pre * (photon + coulomb);
}

double free_l1_channel(const EmitterGeometry& g, double omega) {
  const auto& k = constants();
  const double c = k.speed_of_light;
  const double r = g.distance;
  const double jx = j1(omega * r / c);
  return 3.0 * omega * jx * jx / (2.0 * kPi * kPi * k.reduced_planck * k.vacuum_permittivity * c * r * r);
}

double free_background(const EmitterGeometry& g, double omega) {
  const double x = omega * g.distance / constants().speed_of_light;
  const double u = one_minus_three_j1_over_x(x);  // 1 - t, t = 3 j1(x)/x
  return j_free_space(omega) * u * (2.0 - u);
}

double j_perp_total(const SphereModel& m, const EmitterGeometry& g, double omega, bool background) {
  const double gp = g_perp(m, g, omega);
  return gp * gp + (background ? free_background(g, omega) : 0.0);
}

double j_multipolar_total(const SphereModel& m, const EmitterGeometry& g, double omega, bool background) {
  check_geometry(m, g);
  const auto& k = constants();
  const double c = k.speed_of_light;
  const double r = g.distance;
  const double R = m.radius;
  const double xs = omega * R / c;
  const double xe = omega * r / c;
  const FanoEvaluation f = evaluate(m, omega);
  const double unit = 2.0 * kPi * kPi * k.reduced_planck * k.vacuum_permittivity * c;

  const double sqrt_j1 = std::sqrt(3.0 * omega * R / unit) * m.plasma_frequency * std::sqrt(kPi / c) *
                         j1(xs) * y1(xe) * f.c1 / r;
  const double sqrt_j2 = std::sqrt(3.0 * omega / unit) * j1(xe) * f.detuning_d / r;
  const double s = sqrt_j1 + sqrt_j2;
  return s * s + (background ? free_background(g, omega) : 0.0);
}

SpectralSample sample(const SphereModel& m, const EmitterGeometry& g, double omega, bool background) {
  SpectralSample s{};
  s.omega = omega;
  s.j_parallel = j_parallel(m, g, omega);
  const double gp = g_perp(m, g, omega);
  s.g_perp_sq = gp * gp;
  s.j_perp_total = s.g_perp_sq + (background ? free_background(g, omega) : 0.0);
  s.j_free = j_free_space(omega);
  s.j_multipolar = j_multipolar_total(m, g, omega, background);
  return s;
}

SpectralTable tabulate(const SphereModel& m, const EmitterGeometry& g, const Eigen::ArrayXd& omega,
                       bool background) {
  const Eigen::Index n = omega.size();
  SpectralTable t{omega, Eigen::ArrayXd(n), Eigen::ArrayXd(n), Eigen::ArrayXd(n), Eigen::ArrayXd(n),
                  Eigen::ArrayXd(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    const SpectralSample s = sample(m, g, omega[i], background);
    t.j_parallel[i] = s.j_parallel;
    t.g_perp_sq[i] = s.g_perp_sq;
    t.j_perp_total[i] = s.j_perp_total;
    t.j_free[i] = s.j_free;
    t.j_multipolar[i] = s.j_multipolar;
  }
  return t;
}

double pse_explicit_estimate(const SphereModel& m) {
  const auto& k = constants();
  const double op = m.plasma_frequency;
  const double c = k.speed_of_light;
  const double per_si = op * op * op / (18.0 * k.vacuum_permittivity * kPi * kPi * c * c * c);
  const double enm = k.elementary_charge * 1e-9;
  return joule_to_ev(per_si * enm * enm);
}

double pse_explicit_estimate(const SphereModel& m, const EmitterGeometry& g) {
  check_geometry(m, g);
  const double x = m.plasma_frequency * g.distance / constants().speed_of_light;
  if (x > 0.3)
    std::cerr << "warning: |r_e| Op / c = " << x << "; small-argument PSE estimate is unreliable\n";
  return pse_explicit_estimate(m);
}

double k_parallel(const SphereModel& m, double z) {
  if (!(z >= 0.0)) throw DomainError("k_parallel profile is defined for z >= 0");
  const double eps0 = constants().vacuum_permittivity;
  const double R = m.radius;
  if (z <= R) return -m.charge_density * z / (3.0 * eps0);
  const double q = R / z;
  return -m.charge_density * R * q * q / (3.0 * eps0);
}

double k_parallel_linear(const SphereModel& m, double z_emitter, double z) {
  const double eps0 = constants().vacuum_permittivity;
  const double R = m.radius;
  const double q = R / z_emitter;
  const double slope = z_emitter <= R ? -m.charge_density / (3.0 * eps0)
                                      : 2.0 * m.charge_density * q * q * q / (3.0 * eps0);
  return k_parallel(m, z_emitter) + slope * (z - z_emitter);
}

}  // namespace pqed
