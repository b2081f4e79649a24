#include "pqed/cli.hpp"

#include <CLI11.hpp>
#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>

#include "pqed/analysis.hpp"
#include "pqed/bounds.hpp"
#include "pqed/error.hpp"
#include "pqed/fano.hpp"
#include "pqed/mqed.hpp"
#include "pqed/oracles.hpp"
#include "pqed/special_functions.hpp"
#include "pqed/spectral.hpp"
#include "pqed/units.hpp"

namespace pqed::cli {

namespace {

constexpr double kPi = std::numbers::pi;

// hbar J / d^2 in eV per (e nm)^2.
double density_out(double j_si) {
  const auto& k = constants();
  const double enm = k.elementary_charge * 1e-9;
  return joule_to_ev(k.reduced_planck * j_si) * enm * enm;
}

// Coupling per unit dipole (rad/s per C m) as hbar G/d in eV per e nm.
double coupling_out(double g_si) {
  const auto& k = constants();
  return joule_to_ev(k.reduced_planck * g_si) * k.elementary_charge * 1e-9;
}

Document base_document(const std::string& command, const RunConfig& cfg) {
  Document d;
  d.meta["version"] = kVersion;
  d.meta["command"] = command;
  d.meta["config"] = cfg.to_json();
  return d;
}

Document report(const std::string& command, const RunConfig& cfg) {
  Document d = base_document(command, cfg);
  d.columns = {"quantity", "value", "unit"};
  return d;
}

SphereModel model_of(const RunConfig& cfg) { return SphereModel::from_nm(cfg.radius, cfg.rho); }

}  // namespace

void RunConfig::validate() const {
  auto finite_pos = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!finite_pos(rho)) throw ValidationError("--rho must be positive");
  if (!finite_pos(radius)) throw ValidationError("--radius must be positive");
  if (!finite_pos(separation)) throw ValidationError("--separation must be positive");
  if (!(std::isfinite(dipole) && dipole >= 0.0)) throw ValidationError("--dipole must be non-negative");
  if (!finite_pos(emin) || !finite_pos(emax) || !(emax > emin))
    throw ValidationError("energy grid needs 0 < emin < emax");
  if (n < 2) throw ValidationError("--n must be at least 2");
  if (format != "csv" && format != "json") throw ValidationError("--format must be csv or json");
  if (!(std::isfinite(cutoff) && cutoff >= 20.0)) throw ValidationError("--cutoff must be >= 20 (units of Op)");
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["rho"] = rho;
  j["radius"] = radius;
  j["separation"] = separation;
  j["dipole"] = dipole;
  j["emin"] = emin;
  j["emax"] = emax;
  j["n"] = n;
  j["format"] = format;
  j["out"] = out;
  j["cutoff"] = cutoff;
  j["seed"] = seed;
  return j;
}

void RunConfig::apply_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("config file must hold a flat JSON object");
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& k = it.key();
      if (k == "rho") rho = it->get<double>();
      else if (k == "radius") radius = it->get<double>();
      else if (k == "separation") separation = it->get<double>();
      else if (k == "dipole") dipole = it->get<double>();
      else if (k == "emin") emin = it->get<double>();
      else if (k == "emax") emax = it->get<double>();
      else if (k == "n") n = it->get<int>();
      else if (k == "format") format = it->get<std::string>();
      else if (k == "out") out = it->get<std::string>();
      else if (k == "cutoff") cutoff = it->get<double>();
      else if (k == "seed") seed = it->get<std::uint64_t>();
      else throw ValidationError("unknown config key '" + k + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad config value: ") + e.what());
  }
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  RunConfig cfg;
  cfg.apply_json(j);
  return cfg;
}

Document cmd_constants(const RunConfig& cfg) {
  cfg.validate();
  const double op = plasma_frequency(cfg.rho);
  Document d = report("constants", cfg);
  d.add_row({"plasma_energy", angular_to_ev(op), "eV"});
  d.add_row({"quasistatic_resonance", angular_to_ev(op / std::sqrt(3.0)), "eV"});
  d.add_row({"plasma_length", m_to_nm(constants().speed_of_light / op), "nm"});
  d.add_row({"usc_energy_scale", usc_energy_scale(), "MeV"});
  d.add_row({"usc_energy_scale_atomic", usc_energy_scale_atomic(), "MeV"});
  const SphereModel m = model_of(cfg);
  d.add_row({"dressed_resonance", angular_to_ev(resonance_root(m)), "eV"});
  d.add_row({"resonance_fwhm", angular_to_ev(resonance_width(m)), "eV"});
  return d;
}

Document cmd_spectra(const RunConfig& cfg, bool background, bool refine) {
  cfg.validate();
  const SphereModel m = model_of(cfg);
  const EmitterGeometry g = EmitterGeometry::at_separation_nm(m, cfg.separation);
  const DrudePermittivity eps{m.plasma_frequency};

  std::vector<double> energies;
  const Eigen::ArrayXd uniform = Eigen::ArrayXd::LinSpaced(cfg.n, cfg.emin, cfg.emax);
  energies.assign(uniform.data(), uniform.data() + uniform.size());
  double root_ev = std::nan(""), width_ev = std::nan("");
  if (refine) {
    const double root = resonance_root(m);
    const double width = resonance_width(m, root);
    root_ev = angular_to_ev(root);
    width_ev = angular_to_ev(width);
    const Eigen::ArrayXd around = Eigen::ArrayXd::LinSpaced(401, -10.0, 10.0);
    for (double t : around) {
      const double e = angular_to_ev(root + t * width);
      if (e >= cfg.emin && e <= cfg.emax) energies.push_back(e);
    }
    std::sort(energies.begin(), energies.end());
    energies.erase(std::unique(energies.begin(), energies.end()), energies.end());
  }

  Document d = base_document("spectra", cfg);
  d.meta["background"] = background;
  d.meta["refine"] = refine;
  d.meta["resonance_eV"] = root_ev;
  d.meta["resonance_fwhm_eV"] = width_ev;
  d.meta["units"] = "hbar J/d^2 in eV/(e nm)^2 per eV";
  d.columns = {"energy_eV", "j_parallel", "g_perp_sq", "j_perp_total", "j_free", "j_multipolar", "j_mqed"};
  for (double e : energies) {
    const double w = ev_to_angular(e);
    const SpectralSample s = sample(m, g, w, background);
    d.add_row({e, density_out(s.j_parallel), density_out(s.g_perp_sq), density_out(s.j_perp_total),
               density_out(s.j_free), density_out(s.j_multipolar),
               density_out(j_mqed(eps, w, m.radius, g.distance))});
  }
  return d;
}

Document cmd_sweep(const RunConfig& cfg, const SweepOptions& opt) {
  cfg.validate();
  SweepGrid grid;
  grid.radii = opt.radii;
  grid.separations = opt.separations;
  grid.window_lo = opt.window_lo;
  grid.window_hi = opt.window_hi;
  grid.dipole = cfg.dipole;
  grid.density = cfg.rho;
  grid.recenter = opt.recenter;
  try {
    grid.validate();
  } catch (const DomainError& e) {
    throw ValidationError(e.what());
  }
  const auto rows = sweep(grid);

  Document d = base_document("sweep", cfg);
  d.meta["grid"]["radii"] = opt.radii;
  d.meta["grid"]["separations"] = opt.separations;
  d.meta["grid"]["window_lo"] = opt.window_lo;
  d.meta["grid"]["window_hi"] = opt.window_hi;
  d.meta["grid"]["recenter"] = opt.recenter;
  d.columns = {"radius_nm", "separation_nm", "longitudinality", "usc_parameter",
               "omega_res_eV", "kappa_eV", "error"};
  for (const auto& r : rows) {
    d.add_row({r.radius_nm, r.separation_nm, r.longitudinality, r.usc_parameter, angular_to_ev(r.omega_res),
               angular_to_ev(r.kappa), r.error});
  }
  return d;
}

Document cmd_sumrule(const RunConfig& cfg) {
  cfg.validate();
  const SphereModel m = model_of(cfg);
  const EmitterGeometry g = EmitterGeometry::at_separation_nm(m, cfg.separation);
  const double root = resonance_root(m);
  const double width = resonance_width(m, root);
  QuadratureSpec q;
  q.refinement_center = root;
  q.refinement_width = width;
  const SumRuleResult r = sum_rule_residual(m, g, cfg.cutoff * m.plasma_frequency, q);

  Document d = report("sumrule", cfg);
  d.add_row({"normalized_residual", r.residual, "1"});
  d.add_row({"cutoff", cfg.cutoff, "Op"});
  d.add_row({"cutoff_energy", angular_to_ev(cfg.cutoff * m.plasma_frequency), "eV"});
  d.add_row({"integral_total", r.total / m.plasma_frequency, "Op"});
  d.add_row({"integral_positive", r.positive / m.plasma_frequency, "Op"});
  d.add_row({"tail_estimate", r.tail_estimate / m.plasma_frequency, "Op"});
  d.add_row({"refinement_center", angular_to_ev(root), "eV"});
  d.add_row({"refinement_width", angular_to_ev(width), "eV"});
  d.add_row({"intervals", static_cast<double>(r.intervals), "1"});
  return d;
}

Document cmd_bound(const RunConfig& cfg, const BoundOptions& opt) {
  if (opt.transparency < 0.0 && opt.target < 0.0 && opt.transition < 0.0)
    throw ValidationError("bound needs --transparency, --target or --transition");
  Document d = report("bound", cfg);
  d.meta["transparency_eV"] = opt.transparency;
  d.meta["target"] = opt.target;
  d.meta["transition_eV"] = opt.transition;
  try {
    if (opt.transparency >= 0.0) d.add_row({"usc_ratio_bound", usc_ratio_bound(opt.transparency), "1"});
    if (opt.target >= 0.0) d.add_row({"required_transparency", required_transparency(opt.target), "eV"});
    if (opt.transition >= 0.0) {
      const double dmax = trk_dipole_bound(opt.transition);
      d.add_row({"trk_dipole_max", si_to_debye(dmax), "Debye"});
      d.add_row({"trk_dipole_max_enm", si_to_enm(dmax), "e nm"});
      if (opt.transparency >= 0.0) {
        BoundQuery q{opt.transparency, opt.transition, debye_to_si(cfg.dipole), 1.0};
        const double w = ev_to_angular(opt.transition);
        d.add_row({"perfect_cavity_ratio", perfect_cavity_coupling(q) / w, "1"});
        q.dipole = dmax;
        d.add_row({"perfect_cavity_ratio_trk", perfect_cavity_coupling(q) / w, "1"});
      }
    }
  } catch (const DomainError& e) {
    throw ValidationError(e.what());
  }
  return d;
}

Document cmd_potential(const RunConfig& cfg, double zmax_nm) {
  cfg.validate();
  const SphereModel m = model_of(cfg);
  const EmitterGeometry g = EmitterGeometry::at_separation_nm(m, cfg.separation);
  if (zmax_nm <= 0.0) zmax_nm = 4.0 * m_to_nm(g.distance);
  Document d = base_document("potential", cfg);
  d.meta["sphere_radius_nm"] = cfg.radius;
  d.meta["emitter_z_nm"] = m_to_nm(g.distance);
  d.meta["units"] = "V/m per unit sphere displacement";
  d.columns = {"z_nm", "k_parallel", "k_lwa"};
  const Eigen::ArrayXd z = Eigen::ArrayXd::LinSpaced(cfg.n, 0.0, zmax_nm);
  for (double zn : z) {
    const double zm = nm_to_m(zn);
    d.add_row({zn, k_parallel(m, zm), k_parallel_linear(m, g.distance, zm)});
  }
  return d;
}

Document cmd_verify(const RunConfig& cfg, bool perturb_plasma, std::int64_t mc_samples, bool& all_passed) {
  cfg.validate();
  const SphereModel m = model_of(cfg);
  const EmitterGeometry g = EmitterGeometry::at_separation_nm(m, cfg.separation);
  Document d = base_document("verify", cfg);
  d.meta["perturb_plasma"] = perturb_plasma;
  d.meta["mc_samples"] = mc_samples;
  d.columns = {"check", "measured", "tolerance", "status"};
  all_passed = true;
  auto add = [&](const std::string& name, double measured, double tol) {
    const bool ok = std::isfinite(measured) && measured <= tol;
    all_passed = all_passed && ok;
    d.add_row({name, measured, tol, ok ? "pass" : "FAIL"});
  };

  {  // closed-form shift vs principal-value quadrature
    SphereModel oracle_model = m;
    if (perturb_plasma) oracle_model.plasma_frequency *= 1.01;
    std::mt19937_64 rng(cfg.seed);
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const double w = (0.05 + 2.95 * u) * m.plasma_frequency;
      const double closed = shift_F(m, w);
      worst = std::max(worst, std::abs(pv_shift_oracle(oracle_model, {w, 64}) - closed) / std::abs(closed));
    }
    add("shift_vs_pv_quadrature", worst, 1e-6);
  }
  add("c1_normalization", std::abs(c1_normalization(m).value - 1.0), 1e-4);
  {
    double worst = 0.0;
    const Eigen::ArrayXd lx = Eigen::ArrayXd::LinSpaced(61, std::log(1e-2), std::log(50.0));
    for (double l : lx) {
      const double x = std::exp(l);
      const double exact = 2.0 * x * x / 3.0;
      worst = std::max(worst, std::abs(weighted_jl_sum(x, 1) - exact) / exact);
    }
    add("bessel_sum_identity", worst, 1e-9);
  }
  {
    double worst = 0.0;
    for (double frac : {0.0, 0.5, 1.0}) {
      const auto e = coulomb_overlap_oracle(cfg.radius, frac * cfg.radius, mc_samples, cfg.seed);
      worst = std::max(worst, std::abs(e.value - coulomb_overlap_polynomial(cfg.radius, frac * cfg.radius)) /
                                  e.std_error);
    }
    add("coulomb_mc_standard_errors", worst, 3.0);
  }
  {
    const SphereModel vac = SphereModel::from_nm(cfg.radius, 1e-9);
    const DrudePermittivity eps{vac.plasma_frequency};
    const EmitterGeometry gv{g.distance};
    double worst = 0.0;
    const Eigen::ArrayXd es = Eigen::ArrayXd::LinSpaced(100, cfg.emin, cfg.emax);
    for (double e : es) {
      const double w = ev_to_angular(e);
      const double j0 = j_free_space(w);
      for (double v : {j_perp_total(vac, gv, w), j_multipolar_total(vac, gv, w), j_mqed(eps, w, vac.radius, gv.distance)})
        worst = std::max(worst, std::abs(v - j0) / j0);
    }
    add("vacuum_limits", worst, 1e-6);
  }
  {
    const DrudePermittivity eps{m.plasma_frequency};
    const double root = resonance_root(m);
    const double width = resonance_width(m, root);
    std::vector<double> ws;
    const Eigen::ArrayXd span = Eigen::ArrayXd::LinSpaced(2001, 0.9 * root, 1.1 * root);
    ws.assign(span.data(), span.data() + span.size());
    for (double t : Eigen::ArrayXd::LinSpaced(201, -10.0, 10.0)) ws.push_back(root + t * width);
    double peak = 0.0, worst = 0.0;
    std::vector<double> diff;
    for (double w : ws) {
      const double a = j_multipolar_total(m, g, w);
      peak = std::max(peak, a);
      diff.push_back(std::abs(j_mqed(eps, w, m.radius, g.distance) - a));
    }
    for (double x : diff) worst = std::max(worst, x / peak);
    add("mqed_agreement", worst, 1e-2);
  }
  {
    const double w = 30.0 * m.plasma_frequency;
    add("transparency_30Op", std::abs(j_perp_total(m, g, w) / j_free_space(w) - 1.0), 1e-3);
  }
  {
    const SumRuleResult r = sum_rule_residual(m, g, cfg.cutoff * m.plasma_frequency);
    add("sum_rule_residual", std::abs(r.residual), 1e-2);
  }
  return d;
}

Document cmd_fit(const RunConfig& cfg) {
  cfg.validate();
  const SphereModel m = model_of(cfg);
  const EmitterGeometry g = EmitterGeometry::at_separation_nm(m, cfg.separation);
  const LorentzianFit f = fit_resonance(m, g);
  Document d = report("fit", cfg);
  d.add_row({"omega_res", angular_to_ev(f.omega_res), "eV"});
  d.add_row({"kappa", angular_to_ev(f.kappa), "eV"});
  d.add_row({"g_res_per_dipole", coupling_out(f.g_res), "eV/(e nm)"});
  d.add_row({"g_res", angular_to_ev(f.g_res * debye_to_si(cfg.dipole)), "eV"});
  d.add_row({"usc_parameter", usc_parameter(f, cfg.dipole), "1"});
  d.add_row({"rms_residual", f.rms_residual, "1"});
  d.add_row({"iterations", static_cast<double>(f.iterations), "1"});
  d.add_row({"root", angular_to_ev(resonance_root(m)), "eV"});
  return d;
}

namespace {

struct Overrides {
  std::optional<double> rho, radius, separation, dipole, emin, emax, cutoff;
  std::optional<int> n;
  std::optional<std::string> format, out;
  std::optional<std::uint64_t> seed;
  std::string config;

  void attach(CLI::App* sub) {
    sub->add_option("--rho", rho, "charge density [e/nm^3] (default 60)");
    sub->add_option("--radius", radius, "sphere radius [nm] (default 2.5)");
    sub->add_option("--separation", separation, "emitter distance from the sphere surface [nm] (default 1)");
    sub->add_option("--dipole", dipole, "transition dipole [Debye] (default 10)");
    sub->add_option("--emin", emin, "lowest energy [eV] (default 0.5)");
    sub->add_option("--emax", emax, "highest energy [eV] (default 10)");
    sub->add_option("--n", n, "grid points (default 2001)");
    sub->add_option("--format", format, "csv or json (default csv)");
    sub->add_option("--out", out, "output file (default stdout)");
    sub->add_option("--cutoff", cutoff, "sum-rule cutoff in units of Op (default 50)");
    sub->add_option("--seed", seed, "Monte-Carlo seed (default 0)");
    sub->add_option("--config", config, "flat JSON file with the same keys; flags win");
  }

  RunConfig resolve() const {
    RunConfig c = config.empty() ? RunConfig{} : load_config_file(config);
    if (rho) c.rho = *rho;
    if (radius) c.radius = *radius;
    if (separation) c.separation = *separation;
    if (dipole) c.dipole = *dipole;
    if (emin) c.emin = *emin;
    if (emax) c.emax = *emax;
    if (n) c.n = *n;
    if (format) c.format = *format;
    if (out) c.out = *out;
    if (cutoff) c.cutoff = *cutoff;
    if (seed) c.seed = *seed;
    c.validate();
    return c;
  }
};

void emit(const Document& doc, const RunConfig& cfg, std::ostream& out) {
  const std::string text = cfg.format == "json" ? render_json(doc) : render_csv(doc);
  if (cfg.out.empty()) {
    out << text;
    if (!out) throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open output file '" + cfg.out + "'");
  f << text;
  f.close();
  if (!f) throw IoError("failed writing output file '" + cfg.out + "'");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Emitter-nanosphere spectral densities, coupling bounds and cross-checks", "pqed"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Overrides ov;
  SweepOptions sweep_opt;
  BoundOptions bound_opt;
  bool no_background = false, no_refine = false, perturb = false;
  double zmax = -1.0;
  std::int64_t samples = 1000000;

  auto* c_constants = app.add_subcommand("constants", "plasma frequency, resonance and bound scales");
  auto* c_spectra = app.add_subcommand("spectra", "spectral densities on an energy grid");
  auto* c_sweep = app.add_subcommand("sweep", "longitudinality and USC parameter over radius x separation");
  auto* c_sumrule = app.add_subcommand("sumrule", "normalized residual of the transverse sum rule");
  auto* c_bound = app.add_subcommand("bound", "perfect-cavity and TRK coupling bounds");
  auto* c_potential = app.add_subcommand("potential", "on-axis potential coefficient and its linear form");
  auto* c_verify = app.add_subcommand("verify", "run every oracle comparison");
  auto* c_fit = app.add_subcommand("fit", "Lorentzian fit of the longitudinal density");
  for (auto* s : {c_constants, c_spectra, c_sweep, c_sumrule, c_bound, c_potential, c_verify, c_fit}) ov.attach(s);

  c_spectra->add_flag("--no-background", no_background, "drop the l>1 free-space background");
  c_spectra->add_flag("--no-refine", no_refine, "uniform grid only, no points around the resonance");
  c_sweep->add_option("--radii", sweep_opt.radii, "sphere radii [nm]")->delimiter(',');
  c_sweep->add_option("--separations", sweep_opt.separations, "surface separations [nm]")->delimiter(',');
  c_sweep->add_option("--window-lo", sweep_opt.window_lo, "averaging window start [Op]");
  c_sweep->add_option("--window-hi", sweep_opt.window_hi, "averaging window end [Op]");
  c_sweep->add_flag("--recenter", sweep_opt.recenter, "center the window on the resonance");
  c_bound->add_option("--transparency", bound_opt.transparency, "transparency energy [eV]");
  c_bound->add_option("--target", bound_opt.target, "target G/omega");
  c_bound->add_option("--transition", bound_opt.transition, "transition energy [eV]");
  c_potential->add_option("--zmax", zmax, "profile end [nm] (default 4 |r_e|)");
  c_verify->add_flag("--perturb-plasma", perturb, "debug: shift Op by 1% inside the quadrature oracle");
  c_verify->add_option("--samples", samples, "Monte-Carlo samples (>= 1e6 recommended)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    const RunConfig cfg = ov.resolve();
    Document doc;
    int status = kOk;
    if (c_constants->parsed()) doc = cmd_constants(cfg);
    else if (c_spectra->parsed()) doc = cmd_spectra(cfg, !no_background, !no_refine);
    else if (c_sweep->parsed()) doc = cmd_sweep(cfg, sweep_opt);
    else if (c_sumrule->parsed()) doc = cmd_sumrule(cfg);
    else if (c_bound->parsed()) doc = cmd_bound(cfg, bound_opt);
    else if (c_potential->parsed()) doc = cmd_potential(cfg, zmax);
    else if (c_fit->parsed()) doc = cmd_fit(cfg);
    else if (c_verify->parsed()) {
      if (samples < 2) throw ValidationError("--samples must be at least 2");
      bool ok = true;
      doc = cmd_verify(cfg, perturb, samples, ok);
      if (!ok) status = kNumerical;
    }
    emit(doc, cfg, out);
    if (status != kOk) err << "verify: one or more checks failed\n";
    return status;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const BracketError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumerical;
  }
}

}  // namespace pqed::cli
