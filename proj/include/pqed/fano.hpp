#pragma once

namespace pqed {

// Uniformly charged (Drude) sphere. Stored in SI.
struct SphereModel {
  double radius;            // m
  double charge_density;    // C/m^3
  double plasma_frequency;  // rad/s

  // Boundary constructor: radius in nm, density in e/nm^3.
  static SphereModel from_nm(double radius_nm, double electrons_per_nm3);
};

// Everything the closed forms need at one frequency.
struct FanoEvaluation {
  double omega;
  double gamma;       // sphere-photon coupling function
  double shift;       // frequency shift F(omega)
  double resonance;   // h = omega^2 - Op^2 - F
  double c1;          // eigenmode weight
  double detuning_d;  // h / sqrt(h^2 + (pi gamma^2 / 2 omega)^2), in [-1, 1]
};

// e/nm^3 -> rad/s
double plasma_frequency(double electrons_per_nm3);
double plasma_frequency_si(double rho);

double gamma(const SphereModel& m, double omega);
double shift_F(const SphereModel& m, double omega);
// omega -> 0+ limit of F, -2 Op^2 / 3.
double shift_F_limit0(const SphereModel& m);
double shift_F_derivative(const SphereModel& m, double omega);

double resonance_function(const SphereModel& m, double omega);
double resonance_slope(const SphereModel& m, double omega);

double c1(const SphereModel& m, double omega);
double detuning_d(const SphereModel& m, double omega);
FanoEvaluation evaluate(const SphereModel& m, double omega);

// Root of h on (1e-3 Op, Op) by bisection.
double resonance_root(const SphereModel& m);
// Full width at half maximum of the c1^2 peak in the narrow-resonance
// expansion: pi gamma^2 / (omega h') at the root.
double resonance_width(const SphereModel& m);
double resonance_width(const SphereModel& m, double root);

}  // namespace pqed
