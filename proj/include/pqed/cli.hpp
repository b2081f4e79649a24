#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pqed/table.hpp"

namespace pqed::cli {

inline constexpr const char* kVersion = "pqed 0.1.0";

enum ExitCode : int { kOk = 0, kValidation = 1, kNumerical = 2, kIo = 3 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  double rho = 60.0;         // e/nm^3
  double radius = 2.5;       // nm
  double separation = 1.0;   // nm, emitter distance from the surface
  double dipole = 10.0;      // Debye
  double emin = 0.5;         // eV
  double emax = 10.0;        // eV
  int n = 2001;
  std::string format = "csv";
  std::string out;           // empty: stdout
  double cutoff = 50.0;      // units of the plasma frequency
  std::uint64_t seed = 0;

  void validate() const;
  nlohmann::ordered_json to_json() const;
  // Flat object with the same keys; unknown keys are rejected.
  void apply_json(const nlohmann::json& j);
};

RunConfig load_config_file(const std::string& path);

struct SweepOptions {
  std::vector<double> radii{1.0, 2.5, 5.0};
  std::vector<double> separations{0.5, 1.0, 2.0};
  double window_lo = 0.57;
  double window_hi = 0.58;
  bool recenter = false;
};

struct BoundOptions {
  double transparency = -1.0;  // eV, unset when negative
  double target = -1.0;
  double transition = -1.0;    // eV
};

Document cmd_constants(const RunConfig& cfg);
Document cmd_spectra(const RunConfig& cfg, bool background = true, bool refine = true);
Document cmd_sweep(const RunConfig& cfg, const SweepOptions& opt);
Document cmd_sumrule(const RunConfig& cfg);
Document cmd_bound(const RunConfig& cfg, const BoundOptions& opt);
Document cmd_potential(const RunConfig& cfg, double zmax_nm = -1.0);
// Sets all_passed to false when any check fails.
Document cmd_verify(const RunConfig& cfg, bool perturb_plasma, std::int64_t mc_samples, bool& all_passed);
Document cmd_fit(const RunConfig& cfg);

// Full command line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pqed::cli
