#pragma once

namespace pqed {

// SI values. Everything downstream reads constants through constants().
struct PhysicalConstants {
  double elementary_charge;    // C
  double electron_mass;        // kg
  double vacuum_permittivity;  // F/m
  double reduced_planck;       // J s
  double speed_of_light;       // m/s
  double fine_structure;
  double hartree;  // J

  static PhysicalConstants codata2018();

  // e^2 / (4 pi eps0 hbar c) from the stored SI values.
  double fine_structure_from_si() const;
};

const PhysicalConstants& constants();

// Test hook: installs a different constant set for the lifetime of the
// object. Not safe to use while other threads evaluate formulas.
class ScopedConstants {
 public:
  explicit ScopedConstants(const PhysicalConstants& replacement);
  ~ScopedConstants();
  ScopedConstants(const ScopedConstants&) = delete;
  ScopedConstants& operator=(const ScopedConstants&) = delete;

 private:
  const PhysicalConstants* previous_;
  PhysicalConstants held_;
};

// Boundary conversions. Internal units are SI with angular frequencies.
double ev_to_angular(double energy_ev);
double angular_to_ev(double omega);
double ev_to_joule(double energy_ev);
double joule_to_ev(double energy_j);

constexpr double nm_to_m(double nm) { return nm * 1e-9; }
constexpr double m_to_nm(double m) { return m * 1e9; }

double debye_to_si(double debye);  // C m
double si_to_debye(double dipole);
double enm_to_si(double dipole_enm);  // e nm -> C m
double si_to_enm(double dipole);

// e/nm^3 -> C/m^3
double density_to_si(double electrons_per_nm3);
double density_from_si(double rho);

// Energy scale of the single-emitter coupling bound, pi * alpha^-1 * m_e c^2,
// computed from the SI constants. MeV.
double usc_energy_scale();
// Same scale through the stored alpha and Hartree values. MeV.
double usc_energy_scale_atomic();

}  // namespace pqed
