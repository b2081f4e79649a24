#include "pqed/bounds.hpp"

#include <cmath>
#include <numbers>

#include "pqed/error.hpp"
#include "pqed/units.hpp"

namespace pqed {

void BoundQuery::validate() const {
  if (!(transparency_energy >= 0.0)) throw DomainError("transparency energy must be non-negative");
  if (!(transition_energy > 0.0)) throw DomainError("transition energy must be positive");
  if (!(n_electrons > 0.0)) throw DomainError("electron count must be positive");
  if (dipole && !(*dipole >= 0.0)) throw DomainError("dipole must be non-negative");
}

double perfect_cavity_coupling(const BoundQuery& q) {
  q.validate();
  if (!q.dipole) throw DomainError("perfect_cavity_coupling needs a dipole");
  const auto& k = constants();
  const double pi = std::numbers::pi;
  const double c = k.speed_of_light;
  const double wt = ev_to_angular(q.transparency_energy);
  const double w = ev_to_angular(q.transition_energy);
  return *q.dipole *
         std::sqrt(wt * w * w * w / (6.0 * pi * pi * k.reduced_planck * k.vacuum_permittivity * c * c * c));
}

double trk_dipole_bound(double transition_energy_ev, double n_electrons) {
  if (!(transition_energy_ev > 0.0)) throw DomainError("transition energy must be positive");
  if (!(n_electrons > 0.0)) throw DomainError("electron count must be positive");
  const auto& k = constants();
  const double w = ev_to_angular(transition_energy_ev);
  const double e = k.elementary_charge;
  return std::sqrt(3.0 * k.reduced_planck * e * e * n_electrons / (2.0 * k.electron_mass * w));
}

double usc_ratio_bound(double transparency_energy_ev) {
  if (!(transparency_energy_ev > 0.0)) throw DomainError("transparency energy must be positive");
  const auto& k = constants();
  const double pi = std::numbers::pi;
  const double c = k.speed_of_light;
  const double e = k.elementary_charge;
  const double energy = ev_to_joule(transparency_energy_ev);
  return std::sqrt(energy * e * e /
                   (4.0 * pi * pi * k.vacuum_permittivity * k.electron_mass * c * c * c * k.reduced_planck));
}

double required_transparency(double target_ratio) {
  if (!(target_ratio > 0.0 && target_ratio < 1.0))
    throw DomainError("target ratio must lie in (0, 1)");
  return target_ratio * target_ratio * usc_energy_scale() * 1e6;
}

}  // namespace pqed
