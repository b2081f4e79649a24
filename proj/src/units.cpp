#include "pqed/units.hpp"

#include <atomic>
#include <numbers>

namespace pqed {

PhysicalConstants PhysicalConstants::codata2018() {
  PhysicalConstants k{};
  k.elementary_charge = 1.602176634e-19;
  k.electron_mass = 9.1093837015e-31;
  k.vacuum_permittivity = 8.8541878128e-12;
  k.reduced_planck = 1.054571817e-34;
  k.speed_of_light = 299792458.0;
  k.fine_structure = 7.2973525693e-3;
  k.hartree = 4.3597447222071e-18;
  return k;
}

double PhysicalConstants::fine_structure_from_si() const {
  return elementary_charge * elementary_charge /
         (4.0 * std::numbers::pi * vacuum_permittivity * reduced_planck * speed_of_light);
}

namespace {
const PhysicalConstants kCodata = PhysicalConstants::codata2018();
std::atomic<const PhysicalConstants*> g_active{&kCodata};
}  // namespace

const PhysicalConstants& constants() { return *g_active.load(std::memory_order_acquire); }

ScopedConstants::ScopedConstants(const PhysicalConstants& replacement)
    : previous_(g_active.load()), held_(replacement) {
  g_active.store(&held_, std::memory_order_release);
}

ScopedConstants::~ScopedConstants() { g_active.store(previous_, std::memory_order_release); }

double ev_to_angular(double energy_ev) {
  const auto& k = constants();
  return energy_ev * k.elementary_charge / k.reduced_planck;
}

double angular_to_ev(double omega) {
  const auto& k = constants();
  return omega * k.reduced_planck / k.elementary_charge;
}

double ev_to_joule(double energy_ev) { return energy_ev * constants().elementary_charge; }
double joule_to_ev(double energy_j) { return energy_j / constants().elementary_charge; }

// 1 D = 1e-21 / c  C m
double debye_to_si(double debye) { return debye * 1e-21 / constants().speed_of_light; }
double si_to_debye(double dipole) { return dipole * constants().speed_of_light / 1e-21; }

double enm_to_si(double dipole_enm) { return dipole_enm * constants().elementary_charge * 1e-9; }
double si_to_enm(double dipole) { return dipole / (constants().elementary_charge * 1e-9); }

double density_to_si(double electrons_per_nm3) {
  return electrons_per_nm3 * constants().elementary_charge * 1e27;
}
double density_from_si(double rho) { return rho / (constants().elementary_charge * 1e27); }

double usc_energy_scale() {
  const auto& k = constants();
  const double pi = std::numbers::pi;
  const double joules = 4.0 * pi * pi * k.vacuum_permittivity * k.electron_mass *
                        k.speed_of_light * k.speed_of_light * k.speed_of_light *
                        k.reduced_planck / (k.elementary_charge * k.elementary_charge);
  return joule_to_ev(joules) * 1e-6;
}

double usc_energy_scale_atomic() {
  const auto& k = constants();
  const double inv = 1.0 / k.fine_structure;
  return joule_to_ev(std::numbers::pi * inv * inv * inv * k.hartree) * 1e-6;
}

}  // namespace pqed
