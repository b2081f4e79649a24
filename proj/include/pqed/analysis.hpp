#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "pqed/error.hpp"
#include "pqed/fano.hpp"
#include "pqed/spectral.hpp"

namespace pqed {

struct SpectralCurve {
  Eigen::ArrayXd omega;   // rad/s
  Eigen::ArrayXd values;  // spectral density, rad/s per (C m)^2
};

// L(w) = (area/pi) (kappa/2) / ((w - w_res)^2 + (kappa/2)^2), kappa the FWHM.
struct LorentzianFit {
  double g_res;         // sqrt(area): coupling per unit dipole, rad/s per C m
  double kappa;         // rad/s
  double omega_res;     // rad/s
  double rms_residual;  // relative to the peak sample
  bool converged;
  int iterations;
};

struct FitError : ConvergenceError {
  FitError(const std::string& what, const LorentzianFit& best_so_far)
      : ConvergenceError(what, best_so_far.rms_residual), best(best_so_far) {}
  LorentzianFit best;
};

Eigen::ArrayXd lorentzian(const Eigen::ArrayXd& omega, double area, double kappa, double omega_res);

// Damped Gauss-Newton fit on the samples with lo <= omega <= hi.
LorentzianFit fit_lorentzian(const SpectralCurve& curve, double lo, double hi);

// J_parallel per unit dipole squared on a uniform grid.
SpectralCurve parallel_curve(const SphereModel& m, const EmitterGeometry& g, double lo, double hi, int n);

// Fit of J_parallel over root +- half_widths * (estimated kappa).
LorentzianFit fit_resonance(const SphereModel& m, const EmitterGeometry& g, int samples = 401,
                            double half_widths = 5.0);

// <J_parallel> / <J_perp> over a frequency window given in units of Op.
// Averages are exact integrals over the window (adaptive quadrature with the
// resonance as a refinement hint), the limit of an ever finer uniform grid.
// recenter moves the window onto the resonance root, keeping its width.
double longitudinality(const SphereModel& m, const EmitterGeometry& g, double lo = 0.57, double hi = 0.58,
                       bool recenter = false);

// d * G_res / omega_res with d in Debye.
double usc_parameter(const LorentzianFit& fit, double dipole_debye);

struct SweepGrid {
  std::vector<double> radii;        // nm
  std::vector<double> separations;  // nm, |r_e| - R_s
  double window_lo = 0.57;          // units of Op
  double window_hi = 0.58;
  double dipole = 10.0;   // Debye
  double density = 60.0;  // e/nm^3
  bool recenter = false;

  void validate() const;
};

struct SweepRow {
  double radius_nm;
  double separation_nm;
  double longitudinality;
  double usc_parameter;
  double omega_res;  // rad/s
  double kappa;      // rad/s
  std::string error;  // empty on success
};

SweepRow sweep_point(const SweepGrid& grid, double radius_nm, double separation_nm);
// Row-major over radii x separations. Points run on worker threads; the
// result order never depends on scheduling.
std::vector<SweepRow> sweep(const SweepGrid& grid, unsigned threads = 0);

}  // namespace pqed
