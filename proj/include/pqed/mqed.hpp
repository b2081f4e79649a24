#pragma once

#include <complex>

namespace pqed {

// Lossless Drude response, eps(w) = 1 - Op^2/w^2.
struct DrudePermittivity {
  double plasma_frequency;  // rad/s
  double operator()(double omega) const;
};

struct GreenZZ {
  double free_part;   // Im G0_zz, 1/m
  double scatter_l1;  // Im G_scatt,zz from the l=1 electric term, 1/m
  double total() const { return free_part + scatter_l1; }
};

// Electric dipole Mie coefficient. With xi = x h1^(1)(x) the scattered field
// carries a1 * h1^(1); for a lossless sphere |a1| <= 1 and Re a1 = |a1|^2.
std::complex<double> mie_electric_l1(const DrudePermittivity& eps, double omega, double radius);

// On-axis zz element at the emitter, radial dipole.
GreenZZ green_zz(const DrudePermittivity& eps, double omega, double radius, double r_e);

// Omega^2/(hbar pi eps0 c^2) Im G_zz, per unit dipole squared.
double j_mqed(const DrudePermittivity& eps, double omega, double radius, double r_e);

}  // namespace pqed
