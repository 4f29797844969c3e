#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "surfimp/materials.hpp"
#include "surfimp/quadrature.hpp"

namespace surfimp::cli {

enum class Command { heat_transfer, casimir, spectrum, correlations, sweep };
enum class OutputFormat { csv, json };

const char* to_string(Command c);
const char* to_string(OutputFormat f);

/// A set of sample points: a single value or lo:hi:N{log,lin}.
struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int count = 1;
  bool log_spacing = true;

  std::vector<double> values() const;
};

/// Fully resolved run configuration. `args` keeps the command line verbatim.
struct RunConfig {
  Command command = Command::heat_transfer;
  Command sweep_target = Command::heat_transfer;
  std::string material1 = "drude:11.5eV,0.05eV";
  std::string material2 = "drude:11.5eV,0.05eV";
  Range gap_cm;  // lengths in cm
  double t1 = 323.0;
  double t2 = 300.0;
  double temperature = 300.0;  // casimir equilibrium / correlations surface
  std::vector<ModelTag> models{ModelTag::impedance};
  QuadratureConfig quad;
  MatsubaraConfig matsubara;
  double band_lo = 1e8;
  double band_hi = 1e16;
  int points_per_decade = 60;
  Range omega{1e12, 1e15, 4, true};
  Range kperp{0.0, 0.0, 1, false};
  OutputFormat format = OutputFormat::csv;
  std::filesystem::path output_dir;
  std::optional<std::filesystem::path> config_file;
  std::vector<std::string> args;

  bool model_both() const { return models.size() > 1; }
};

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "SURFIMP_OUTPUT_DIR";

/// Thrown for --help; carries the usage text.
struct HelpRequested {
  std::string text;
};

/// Parses flags (program name excluded). Values from `--config FILE` (flat
/// key = value) apply unless overridden by flags. Throws UsageError naming
/// the offending field, or HelpRequested.
RunConfig parse_config(std::span<const std::string> args);

/// Material shorthand: `ideal`, `drude:<hbar Omega_p>eV,<hbar gamma>eV`,
/// `impedance:<re>,<im>` (constant), `table:<path.csv>`.
MaterialModel parse_material(const std::string& spec);

/// "0.3um", "300nm", "3e-5cm"; a bare number is read as micrometres. Result in cm.
double parse_length_cm(const std::string& text, const std::string& field);

Range parse_gap(const std::string& text);

struct RunOutcome {
  int exit_code = 0;
  std::vector<std::filesystem::path> outputs;
  std::filesystem::path manifest;
  std::string error;
};

/// Executes the run, writing data tables and `manifest.json` into
/// `output_dir`. Convergence, usage, and I/O failures are reported through
/// the exit code (0 ok, 2 usage, 3 convergence, 4 I/O) and recorded in the
/// manifest when it can still be written. Human-readable progress goes to
/// `log`.
RunOutcome run(const RunConfig& config, std::ostream& log);

/// CLI exit code for an error kind.
int exit_code_for(ErrorKind kind);

}  // namespace surfimp::cli
