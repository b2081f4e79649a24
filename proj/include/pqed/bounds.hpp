#pragma once

#include <optional>

namespace pqed {

struct BoundQuery {
  double transparency_energy;  // eV
  double transition_energy;    // eV
  std::optional<double> dipole;  // C m
  double n_electrons = 1.0;

  void validate() const;
};

// Coupling to a perfect transverse cavity transparent above Omega_T. rad/s.
double perfect_cavity_coupling(const BoundQuery& q);
// Thomas-Reiche-Kuhn ceiling on the transition dipole. C m.
double trk_dipole_bound(double transition_energy_ev, double n_electrons = 1.0);
// Upper bound on G/omega for a single emitter; independent of omega.
double usc_ratio_bound(double transparency_energy_ev);
// Transparency energy (eV) needed to reach the given G/omega.
double required_transparency(double target_ratio);

}  // namespace pqed
