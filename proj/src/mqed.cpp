#include "pqed/mqed.hpp"

#include <cmath>
#include <numbers>

#include "pqed/error.hpp"
#include "pqed/units.hpp"

namespace pqed {

namespace {
constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

// The interior solution enters only through psi1(z)/psi1'(z) with z = m x,
// and both sides are functions of w = z^2 = eps x^2, which is real:
//   P(w) = j1(z)/z,  Q(w) = psi1'(z)/z,  psi1(z)/psi1'(z) = z P/Q.
// For w < 0 (below the plasma frequency) z is imaginary and the
// trigonometric forms turn hyperbolic.
void interior_pq(double w, double& P, double& Q) {
  if (std::abs(w) < 0.1) {
    P = 1.0 / 3.0 - w / 30.0 + w * w / 840.0 - w * w * w / 45360.0 + w * w * w * w / 3991680.0;
    Q = 2.0 / 3.0 - 2.0 * w / 15.0 + w * w / 140.0 - w * w * w / 5670.0 + w * w * w * w / 399168.0;
    return;
  }
  if (w > 0.0) {
    const double z = std::sqrt(w), s = std::sin(z), c = std::cos(z);
    P = (s - z * c) / (z * z * z);
    Q = c / (z * z) - s / (z * z * z) + s / z;
  } else {
    const double t = std::sqrt(-w), sh = std::sinh(t), ch = std::cosh(t);
    P = (t * ch - sh) / (t * t * t);
    Q = -ch / (t * t) + sh / (t * t * t) + sh / t;
  }
}
}  // namespace

double DrudePermittivity::operator()(double omega) const {
  if (!(omega > 0.0)) throw DomainError("permittivity requires omega > 0");
  return 1.0 - plasma_frequency * plasma_frequency / (omega * omega);
}

cd mie_electric_l1(const DrudePermittivity& eps, double omega, double radius) {
  if (!(radius > 0.0)) throw DomainError("sphere radius must be positive");
  const double e = eps(omega);
  const double x = omega * radius / constants().speed_of_light;
  double Pi, Qi, Po, Qo;
  interior_pq(e * x * x, Pi, Qi);
  // The exterior psi1(x) = x^2 P(x^2) and psi1'(x) = x Q(x^2) come from the same
  // routine, so the numerator vanishes exactly when eps = 1.
  interior_pq(x * x, Po, Qo);
  const double s = std::sin(x), c = std::cos(x);
  const double chi = -c / x - s;
  const double dchi = s / x + c / (x * x) - c;

  // a1 = (m psi(mx) psi'(x) - psi(x) psi'(mx)) / (m psi(mx) xi'(x) - xi(x) psi'(mx)),
  // multiplied through by Q/psi'(mx); finite at eps = 0 with no special case.
  const double num = x * x * (e * Pi * Qo - Qi * Po);
  const cd den(num, x * e * Pi * dchi - Qi * chi);
  return num / den;
}

GreenZZ green_zz(const DrudePermittivity& eps, double omega, double radius, double r_e) {
  if (!(r_e > radius + 1e-12)) throw GeometryError("emitter must lie outside the sphere (|r_e| > R_s)");
  const double k = omega / constants().speed_of_light;
  const double kr = k * r_e;
  const cd a1 = mie_electric_l1(eps, omega, radius);
  // h1^(1)(kr)/(kr)
  const cd h1(std::sin(kr) / (kr * kr) - std::cos(kr) / kr, -std::cos(kr) / (kr * kr) - std::sin(kr) / kr);
  const cd ratio = h1 / kr;
  // l(l+1)(2l+1) = 6 for l = 1
  const cd g = cd(0.0, -k / (4.0 * kPi)) * 6.0 * a1 * ratio * ratio;
  return {k / (6.0 * kPi), g.imag()};
}

double j_mqed(const DrudePermittivity& eps, double omega, double radius, double r_e) {
  const auto& kc = constants();
  const double c = kc.speed_of_light;
  const GreenZZ gz = green_zz(eps, omega, radius, r_e);
  return omega * omega / (kc.reduced_planck * kPi * kc.vacuum_permittivity * c * c) * gz.total();
}

}  // namespace pqed
