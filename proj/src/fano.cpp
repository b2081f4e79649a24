#include "pqed/fano.hpp"

#include <cmath>
#include <numbers>

#include "pqed/error.hpp"
#include "pqed/special_functions.hpp"
#include "pqed/units.hpp"

namespace pqed {

namespace {
constexpr double kPi = std::numbers::pi;

void require_positive_omega(double omega, const char* what) {
  if (!(omega > 0.0)) throw DomainError(std::string(what) + " requires omega > 0");
}
}  // namespace

double plasma_frequency_si(double rho) {
  if (!(rho > 0.0)) throw DomainError("charge density must be positive");
  const auto& k = constants();
  return std::sqrt(rho * k.elementary_charge / (k.electron_mass * k.vacuum_permittivity));
}

double plasma_frequency(double electrons_per_nm3) {
  if (!(electrons_per_nm3 > 0.0)) throw DomainError("charge density must be positive");
  return plasma_frequency_si(density_to_si(electrons_per_nm3));
}

SphereModel SphereModel::from_nm(double radius_nm, double electrons_per_nm3) {
  if (!(radius_nm > 0.0) || !std::isfinite(radius_nm)) throw DomainError("sphere radius must be positive");
  SphereModel m{};
  m.radius = nm_to_m(radius_nm);
  m.charge_density = density_to_si(electrons_per_nm3);
  m.plasma_frequency = pqed::plasma_frequency(electrons_per_nm3);
  return m;
}

double gamma(const SphereModel& m, double omega) {
  if (!(omega >= 0.0)) throw DomainError("gamma requires omega >= 0");
  const double c = constants().speed_of_light;
  return 2.0 * m.plasma_frequency * std::sqrt(m.radius / (kPi * c)) * omega * j1(omega * m.radius / c);
}

double shift_F(const SphereModel& m, double omega) {
  require_positive_omega(omega, "shift_F");
  const double x = omega * m.radius / constants().speed_of_light;
  return 2.0 * m.plasma_frequency * m.plasma_frequency * x * j1(x) * y1(x);
}

double shift_F_limit0(const SphereModel& m) {
  return -2.0 * m.plasma_frequency * m.plasma_frequency / 3.0;
}

double shift_F_derivative(const SphereModel& m, double omega) {
  require_positive_omega(omega, "shift_F_derivative");
  const double k = m.radius / constants().speed_of_light;
  const double x = omega * k;
  const double jj = j1(x), yy = y1(x);
  const double d = jj * yy + x * j1_prime(x) * yy + x * jj * y1_prime(x);
  return 2.0 * m.plasma_frequency * m.plasma_frequency * k * d;
}

double resonance_function(const SphereModel& m, double omega) {
  const double op = m.plasma_frequency;
  return omega * omega - op * op - shift_F(m, omega);
}

double resonance_slope(const SphereModel& m, double omega) {
  return 2.0 * omega - shift_F_derivative(m, omega);
}

FanoEvaluation evaluate(const SphereModel& m, double omega) {
  require_positive_omega(omega, "evaluate");
  const double c = constants().speed_of_light;
  const double op = m.plasma_frequency;
  const double x = omega * m.radius / c;
  const double jx = j1(x);

  FanoEvaluation e{};
  e.omega = omega;
  e.gamma = 2.0 * op * std::sqrt(m.radius / (kPi * c)) * omega * jx;
  e.shift = 2.0 * op * op * x * jx * y1(x);
  e.resonance = omega * omega - op * op - e.shift;
  const double damping = kPi / (2.0 * omega) * e.gamma * e.gamma;
  const double norm = std::hypot(e.resonance, damping);
  e.c1 = e.gamma / norm;
  e.detuning_d = e.resonance / norm;
  return e;
}

double c1(const SphereModel& m, double omega) { return evaluate(m, omega).c1; }
double detuning_d(const SphereModel& m, double omega) { return evaluate(m, omega).detuning_d; }

double resonance_root(const SphereModel& m) {
  double lo = 1e-3 * m.plasma_frequency;
  double hi = m.plasma_frequency;
  double h_lo = resonance_function(m, lo);
  const double h_hi = resonance_function(m, hi);
  if (!(h_lo < 0.0 && h_hi > 0.0))
    throw BracketError("resonance function does not change sign on (1e-3 Op, Op)");
  // Bisect until the bracket stops shrinking.
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double h_mid = resonance_function(m, mid);
    if (h_mid == 0.0) return mid;
    if ((h_mid < 0.0) == (h_lo < 0.0)) {
      lo = mid;
      h_lo = h_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double resonance_width(const SphereModel& m, double root) {
  const double g = gamma(m, root);
  return kPi * g * g / (root * resonance_slope(m, root));
}

double resonance_width(const SphereModel& m) { return resonance_width(m, resonance_root(m)); }

}  // namespace pqed
