#include "pqed/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "pqed/quadrature.hpp"
#include "pqed/units.hpp"

namespace pqed {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

Eigen::ArrayXd lorentzian(const Eigen::ArrayXd& omega, double area, double kappa, double omega_res) {
  const double hw = 0.5 * kappa;
  return (area / kPi) * hw / ((omega - omega_res).square() + hw * hw);
}

LorentzianFit fit_lorentzian(const SpectralCurve& curve, double lo, double hi) {
  if (curve.omega.size() != curve.values.size()) throw DomainError("curve arrays differ in length");
  if (!(hi > lo)) throw DomainError("fit window must satisfy lo < hi");

  std::vector<double> ws, ys;
  for (Eigen::Index i = 0; i < curve.omega.size(); ++i) {
    if (curve.omega[i] >= lo && curve.omega[i] <= hi) {
      ws.push_back(curve.omega[i]);
      ys.push_back(curve.values[i]);
    }
  }
  const auto n = static_cast<Eigen::Index>(ws.size());
  if (n < 50) throw DomainError("fit window needs at least 50 samples");
  const Eigen::Map<const Eigen::ArrayXd> w(ws.data(), n), y_raw(ys.data(), n);

  Eigen::Index imax = 0;
  const double ymax = y_raw.maxCoeff(&imax);
  if (imax == 0 || imax == n - 1 || !(ymax > 0.0))
    throw DomainError("fit window has no interior maximum");

  // Half-maximum crossings, linearly interpolated.
  auto crossing = [&](Eigen::Index from, int step) {
    for (Eigen::Index i = from; i + step >= 0 && i + step < n; i += step) {
      const Eigen::Index j = i + step;
      if (y_raw[j] <= 0.5 * ymax) {
        const double t = (y_raw[i] - 0.5 * ymax) / (y_raw[i] - y_raw[j]);
        return w[i] + t * (w[j] - w[i]);
      }
    }
    return step < 0 ? w[0] : w[n - 1];
  };
  const double fwhm0 = std::max(crossing(imax, 1) - crossing(imax, -1), 2.0 * (w[1] - w[0]));

  // Scaled problem: t = (w - center)/scale, y = values/ymax, params (a, k, m).
  const double center = w[imax];
  const double scale = fwhm0;
  const Eigen::ArrayXd t = (w - center) / scale;
  const Eigen::ArrayXd y = y_raw / ymax;
  Eigen::Vector3d p(0.5 * kPi * 1.0, 1.0, 0.0);

  auto model = [&](const Eigen::Vector3d& q) { return lorentzian(t, q[0], q[1], q[2]); };
  auto cost = [&](const Eigen::Vector3d& q) { return (y - model(q)).square().sum(); };

  double c = cost(p);
  double lambda = 1e-3;
  bool converged = false;
  int it = 0;
  for (; it < 500 && !converged; ++it) {
    const double a = p[0], k = p[1], m = p[2];
    const Eigen::ArrayXd u = t - m;
    const Eigen::ArrayXd q = u.square() + 0.25 * k * k;
    Eigen::Matrix<double, Eigen::Dynamic, 3> J(n, 3);
    J.col(0) = (k / (2.0 * kPi) / q).matrix();
    J.col(1) = (a / (2.0 * kPi) * (q - 0.5 * k * k) / q.square()).matrix();
    J.col(2) = (a * k / kPi * u / q.square()).matrix();
    const Eigen::VectorXd r = (y - model(p)).matrix();
    const Eigen::Matrix3d JtJ = J.transpose() * J;
    const Eigen::Vector3d Jtr = J.transpose() * r;

    bool accepted = false;
    while (!accepted) {
      Eigen::Matrix3d A = JtJ;
      A.diagonal() += lambda * JtJ.diagonal();
      const Eigen::Vector3d step = A.ldlt().solve(Jtr);
      const Eigen::Vector3d trial = p + step;
      const double ct = trial[1] > 0.0 && trial[0] > 0.0 ? cost(trial) : std::numeric_limits<double>::infinity();
      if (ct <= c) {
        const bool small = std::abs(step[0]) <= 1e-10 * std::abs(trial[0]) &&
                           std::abs(step[1]) <= 1e-10 * trial[1] && std::abs(step[2]) <= 1e-10 * trial[1];
        p = trial;
        c = ct;
        lambda = std::max(lambda / 10.0, 1e-12);
        accepted = true;
        converged = small;
      } else {
        lambda *= 10.0;
        if (lambda > 1e12) {
          // No downhill step at machine precision: already at the minimum.
          converged = true;
          break;
        }
      }
    }
  }

  LorentzianFit fit{};
  fit.g_res = std::sqrt(p[0] * ymax * scale);
  fit.kappa = p[1] * scale;
  fit.omega_res = center + p[2] * scale;
  fit.rms_residual = std::sqrt(c / static_cast<double>(n));
  fit.converged = converged;
  fit.iterations = it;
  if (!converged) throw FitError("Lorentzian fit did not converge", fit);
  if (!(fit.omega_res >= lo && fit.omega_res <= hi)) throw FitError("fitted resonance left the window", fit);
  return fit;
}

SpectralCurve parallel_curve(const SphereModel& m, const EmitterGeometry& g, double lo, double hi, int n) {
  if (n < 2) throw DomainError("curve needs at least two samples");
  SpectralCurve cv{Eigen::ArrayXd::LinSpaced(n, lo, hi), Eigen::ArrayXd(n)};
  for (int i = 0; i < n; ++i) cv.values[i] = j_parallel(m, g, cv.omega[i]);
  return cv;
}

LorentzianFit fit_resonance(const SphereModel& m, const EmitterGeometry& g, int samples, double half_widths) {
  check_geometry(m, g);
  const double root = resonance_root(m);
  const double kappa = resonance_width(m, root);
  const double lo = root - half_widths * kappa;
  const double hi = root + half_widths * kappa;
  if (!(hi - lo > 1e3 * std::numeric_limits<double>::epsilon() * root))
    throw ConvergenceError("resonance is narrower than the frequency resolution", kappa / root);
  return fit_lorentzian(parallel_curve(m, g, lo, hi, samples), lo, hi);
}

double longitudinality(const SphereModel& m, const EmitterGeometry& g, double lo, double hi, bool recenter) {
  check_geometry(m, g);
  if (!(lo > 0.0 && hi > lo)) throw DomainError("longitudinality window must satisfy 0 < lo < hi");
  double a = lo * m.plasma_frequency;
  double b = hi * m.plasma_frequency;

  QuadratureSpec q;
  q.rel_tol = 1e-9;
  try {
    const double root = resonance_root(m);
    const double width = resonance_width(m, root);
    if (recenter) {
      const double half = 0.5 * (b - a);
      a = root - half;
      b = root + half;
    }
    if (width > 0.0) {
      q.refinement_center = root;
      q.refinement_width = width;
    }
  } catch (const BracketError&) {
    if (recenter) throw;
  }

  const double par = integrate([&](double w) { return j_parallel(m, g, w); }, a, b, q).value;
  const double perp = integrate([&](double w) { return j_perp_total(m, g, w); }, a, b, q).value;
  return par / perp;
}

double usc_parameter(const LorentzianFit& fit, double dipole_debye) {
  if (!fit.converged) throw ConvergenceError("usc_parameter needs a converged fit", fit.rms_residual);
  return debye_to_si(dipole_debye) * fit.g_res / fit.omega_res;
}

void SweepGrid::validate() const {
  if (radii.empty() || separations.empty()) throw DomainError("sweep grid needs radii and separations");
  for (double r : radii)
    if (!(r > 0.0)) throw DomainError("sweep radii must be positive");
  for (double s : separations)
    if (!(s > 0.0)) throw DomainError("sweep separations must be positive");
  if (!(window_lo > 0.0 && window_hi > window_lo)) throw DomainError("sweep window must satisfy 0 < lo < hi");
  if (!(dipole > 0.0)) throw DomainError("sweep dipole must be positive");
  if (!(density > 0.0)) throw DomainError("sweep density must be positive");
}

SweepRow sweep_point(const SweepGrid& grid, double radius_nm, double separation_nm) {
  SweepRow row{radius_nm, separation_nm, kNaN, kNaN, kNaN, kNaN, {}};
  try {
    const SphereModel m = SphereModel::from_nm(radius_nm, grid.density);
    const EmitterGeometry g = EmitterGeometry::at_separation_nm(m, separation_nm);
    row.longitudinality = longitudinality(m, g, grid.window_lo, grid.window_hi, grid.recenter);
    const LorentzianFit fit = fit_resonance(m, g);
    row.usc_parameter = usc_parameter(fit, grid.dipole);
    row.omega_res = fit.omega_res;
    row.kappa = fit.kappa;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<SweepRow> sweep(const SweepGrid& grid, unsigned threads) {
  grid.validate();
  const std::size_t ns = grid.separations.size();
  const std::size_t total = grid.radii.size() * ns;
  std::vector<SweepRow> rows(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++)
      rows[i] = sweep_point(grid, grid.radii[i / ns], grid.separations[i % ns]);
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rows;
}

}  // namespace pqed
