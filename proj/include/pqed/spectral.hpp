#pragma once

#include <Eigen/Core>

#include "pqed/fano.hpp"

namespace pqed {

// Emitter on the +z axis with its dipole along z.
struct EmitterGeometry {
  double distance;  // m, from the sphere center

  static EmitterGeometry at_distance_nm(double distance_nm);
  static EmitterGeometry at_separation_nm(const SphereModel& m, double separation_nm);
};

// Throws GeometryError unless distance > radius + 1e-12 m.
void check_geometry(const SphereModel& m, const EmitterGeometry& g);

// All densities are per unit dipole squared, SI: rad/s per (C m)^2.
struct SpectralSample {
  double omega;
  double j_parallel;
  double g_perp_sq;
  double j_perp_total;
  double j_free;
  double j_multipolar;
};

double j_free_space(double omega);
double j_parallel(const SphereModel& m, const EmitterGeometry& g, double omega);
// Signed transverse coupling of the modified l=1 channel, per unit dipole.
double g_perp(const SphereModel& m, const EmitterGeometry& g, double omega);
// Same channel without the sphere.
double free_l1_channel(const EmitterGeometry& g, double omega);
// Free-space modes with l > 1 (never modified by the sphere).
double free_background(const EmitterGeometry& g, double omega);
double j_perp_total(const SphereModel& m, const EmitterGeometry& g, double omega, bool background = true);
double j_multipolar_total(const SphereModel& m, const EmitterGeometry& g, double omega,
                          bool background = true);
SpectralSample sample(const SphereModel& m, const EmitterGeometry& g, double omega, bool background = true);

struct SpectralTable {
  Eigen::ArrayXd omega, j_parallel, g_perp_sq, j_perp_total, j_free, j_multipolar;
};
SpectralTable tabulate(const SphereModel& m, const EmitterGeometry& g, const Eigen::ArrayXd& omega,
                       bool background = true);

// Polarization self-energy per dipole squared in the small-|r_e| form,
// eV per (e nm)^2.
double pse_explicit_estimate(const SphereModel& m);
// As above; writes a warning to stderr when |r_e| is not small against c/Op.
double pse_explicit_estimate(const SphereModel& m, const EmitterGeometry& g);

// Potential coefficient on the z axis (V/m per unit sphere displacement).
double k_parallel(const SphereModel& m, double z);
// Tangent line of k_parallel at the emitter position.
double k_parallel_linear(const SphereModel& m, double z_emitter, double z);

}  // namespace pqed
