#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "surfimp/cli.hpp"
#include "surfimp/constants.hpp"
#include "surfimp/errors.hpp"

namespace surfimp::cli {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_number(std::string_view text, const std::string& field) {
  double v = 0.0;
  const std::string t = trim(std::string(text));
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw UsageError(field + ": malformed number '" + std::string(text) + "'");
  }
  return v;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

double parse_energy_ev(const std::string& text, const std::string& field) {
  std::string t = trim(text);
  double scale = 1.0;
  if (ends_with(t, "meV")) {
    scale = 1e-3;
    t.resize(t.size() - 3);
  } else if (ends_with(t, "eV")) {
    t.resize(t.size() - 2);
  }
  return parse_number(t, field) * scale;
}

Command parse_command(const std::string& text, const std::string& field) {
  if (text == "heat-transfer") return Command::heat_transfer;
  if (text == "casimir") return Command::casimir;
  if (text == "spectrum") return Command::spectrum;
  if (text == "correlations") return Command::correlations;
  if (text == "sweep") return Command::sweep;
  throw UsageError(field + ": unknown command '" + text +
                   "' (expected heat-transfer, casimir, spectrum, correlations, sweep)");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

// lo:hi:N{log,lin} or a single value, each endpoint parsed by `parse_one`.
template <class Parse>
Range parse_range(const std::string& text, const std::string& field, Parse parse_one) {
  const auto parts = split(text, ':');
  Range r;
  if (parts.size() == 1) {
    r.lo = r.hi = parse_one(parts[0]);
    r.count = 1;
    return r;
  }
  if (parts.size() != 3) {
    throw UsageError(field + ": expected VALUE or LO:HI:N{log|lin}, got '" + text + "'");
  }
  r.lo = parse_one(parts[0]);
  r.hi = parse_one(parts[1]);
  std::string n = trim(parts[2]);
  if (ends_with(n, "log")) {
    r.log_spacing = true;
    n.resize(n.size() - 3);
  } else if (ends_with(n, "lin")) {
    r.log_spacing = false;
    n.resize(n.size() - 3);
  } else {
    throw UsageError(field + ": range count must end in 'log' or 'lin', got '" + parts[2] + "'");
  }
  const double count = parse_number(n, field);
  if (count < 2 || count != std::floor(count) || count > 1e6) {
    throw UsageError(field + ": range count must be an integer >= 2");
  }
  r.count = static_cast<int>(count);
  if (!(r.hi > r.lo)) throw UsageError(field + ": range upper end must exceed the lower end");
  if (r.log_spacing && !(r.lo > 0.0)) {
    throw UsageError(field + ": log spacing needs a positive lower end");
  }
  return r;
}

}  // namespace

const char* to_string(Command c) {
  switch (c) {
    case Command::heat_transfer: return "heat-transfer";
    case Command::casimir: return "casimir";
    case Command::spectrum: return "spectrum";
    case Command::correlations: return "correlations";
    case Command::sweep: return "sweep";
  }
  return "?";
}

const char* to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

std::vector<double> Range::values() const {
  if (count == 1) return {lo};
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    out[i] = log_spacing ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

double parse_length_cm(const std::string& text, const std::string& field) {
  std::string t = trim(text);
  double scale = constants::cm_per_um;
  struct Unit {
    const char* suffix;
    double cm;
  };
  static constexpr Unit units[] = {{"um", 1e-4}, {"\xC2\xB5m", 1e-4}, {"nm", 1e-7},
                                   {"mm", 1e-1}, {"cm", 1.0},         {"m", 1e2}};
  for (const Unit& u : units) {
    if (ends_with(t, u.suffix)) {
      scale = u.cm;
      t.resize(t.size() - std::char_traits<char>::length(u.suffix));
      break;
    }
  }
  const double v = parse_number(t, field) * scale;
  if (!(v > 0.0)) throw UsageError(field + ": length must be positive, got '" + text + "'");
  return v;
}

Range parse_gap(const std::string& text) {
  return parse_range(text, "--gap", [](const std::string& s) { return parse_length_cm(s, "--gap"); });
}

MaterialModel parse_material(const std::string& spec) {
  const std::string s = trim(spec);
  const auto colon = s.find(':');
  const std::string kind = s.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : s.substr(colon + 1);
  try {
    if (kind == "ideal" && colon == std::string::npos) return MaterialModel::ideal();
    if (kind == "drude") {
      const auto parts = split(rest, ',');
      if (parts.size() != 2) throw UsageError("expected drude:<plasma>eV,<gamma>eV");
      // Drude parameters drive both treatments; the model tag picks one.
      return MaterialModel::drude_impedance(DrudeParams::from_ev(
          parse_energy_ev(parts[0], "material plasma energy"),
          parse_energy_ev(parts[1], "material relaxation energy")));
    }
    if (kind == "impedance") {
      const auto parts = split(rest, ',');
      if (parts.size() != 2) throw UsageError("expected impedance:<re>,<im>");
      return MaterialModel::constant_impedance(
          complex(parse_number(parts[0], "impedance real part"),
                  parse_number(parts[1], "impedance imaginary part")));
    }
    if (kind == "table" && !rest.empty()) {
      return MaterialModel::tabulated(ImpedanceTable::load_csv(rest));
    }
  } catch (const UsageError& e) {
    throw UsageError("--material: '" + spec + "': " + e.what());
  } catch (const DomainError& e) {
    throw UsageError("--material: '" + spec + "': " + e.what());
  }
  throw UsageError("--material: malformed material spec '" + spec +
                   "' (expected ideal, drude:<eV>,<eV>, impedance:<re>,<im>, table:<path>)");
}

RunConfig parse_config(std::span<const std::string> args) {
  RunConfig cfg;
  cfg.args.assign(args.begin(), args.end());

  CLI::App app{"Fluctuation-induced forces and radiative heat transfer between metal plates",
               "surfimp"};
  app.allow_config_extras(false);
  std::string command, sweep_target, gap, material, material1, material2, model, band;
  std::string omega, kperp, format, out_dir, replay;
  double t1 = cfg.t1, t2 = cfg.t2, temperature = cfg.temperature;
  double rel_tol = cfg.quad.rel_tol, abs_floor = cfg.quad.abs_floor;
  int max_sub = cfg.quad.max_subdivisions, ppd = cfg.points_per_decade;
  double matsubara_tol = cfg.matsubara.tail_rel_tol;
  long max_terms = cfg.matsubara.max_terms;

  app.add_option("COMMAND", command, "heat-transfer | casimir | spectrum | correlations | sweep");
  app.add_option("--gap", gap, "gap L: 0.3um, or a range 0.1um:3um:40log");
  app.add_option("--material", material, "both mirrors: ideal | drude:11.5eV,0.05eV | "
                                         "impedance:RE,IM | table:FILE.csv");
  app.add_option("--material1", material1, "mirror 1 (overrides --material)");
  app.add_option("--material2", material2, "mirror 2 (overrides --material)");
  app.add_option("--T1", t1, "temperature of plate 1, K")->capture_default_str();
  app.add_option("--T2", t2, "temperature of plate 2, K")->capture_default_str();
  app.add_option("--T", temperature, "equilibrium temperature (casimir, correlations), K")
      ->capture_default_str();
  app.add_option("--model", model, "impedance | lifshitz-dielectric | both");
  app.add_option("--command", sweep_target, "sweep target: heat-transfer | casimir");
  app.add_option("--band", band, "spectrum band LO:HI in rad/s");
  app.add_option("--points-per-decade", ppd, "spectral grid density")->capture_default_str();
  app.add_option("--omega", omega, "correlations: omega or LO:HI:N{log|lin}, rad/s");
  app.add_option("--kperp", kperp, "correlations: kperp or LO:HI:N{log|lin}, 1/cm");
  app.add_option("--rel-tol", rel_tol, "quadrature relative tolerance")->capture_default_str();
  app.add_option("--abs-floor", abs_floor, "quadrature absolute floor")->capture_default_str();
  app.add_option("--max-subdivisions", max_sub, "bisections per initial panel")
      ->capture_default_str();
  app.add_option("--matsubara-tol", matsubara_tol, "Matsubara tail tolerance")
      ->capture_default_str();
  app.add_option("--max-terms", max_terms, "Matsubara term cap")->capture_default_str();
  app.add_option("--format", format, "csv | json");
  app.add_option("--out", out_dir, std::string("output directory (default $") + kOutputDirEnv +
                                       " or ./surfimp-out)");
  app.add_option("--replay", replay, "re-run the configuration recorded in a manifest.json");
  app.set_config("--config", "", "flat key = value configuration file");

  std::vector<const char*> argv{"surfimp"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::FileError& e) {
    throw IoError(e.what());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (!replay.empty()) {
    std::ifstream in(replay);
    if (!in) throw IoError("--replay: cannot open " + replay);
    nlohmann::json manifest;
    try {
      in >> manifest;
    } catch (const nlohmann::json::exception& e) {
      throw IoError("--replay: " + replay + ": " + e.what());
    }
    if (!manifest.contains("args")) throw UsageError("--replay: manifest lacks 'args'");
    const auto recorded = manifest.at("args").get<std::vector<std::string>>();
    RunConfig replayed = parse_config(recorded);
    if (!out_dir.empty()) replayed.output_dir = out_dir;
    return replayed;
  }

  if (auto* opt = app.get_option("--config"); opt->count() > 0) {
    cfg.config_file = opt->as<std::string>();
  }
  if (command.empty()) throw UsageError("command: missing (heat-transfer, casimir, spectrum, correlations, sweep)");
  cfg.command = parse_command(command, "command");
  if (cfg.command == Command::sweep) {
    if (sweep_target.empty()) throw UsageError("--command: sweep needs --command heat-transfer|casimir");
    cfg.sweep_target = parse_command(sweep_target, "--command");
    if (cfg.sweep_target != Command::heat_transfer && cfg.sweep_target != Command::casimir) {
      throw UsageError("--command: sweep supports heat-transfer and casimir only");
    }
  } else if (!sweep_target.empty()) {
    throw UsageError("--command: only valid with sweep");
  }

  const bool needs_gap = cfg.command != Command::correlations;
  if (needs_gap && gap.empty()) throw UsageError("--gap: required for " + command);
  if (!gap.empty()) cfg.gap_cm = parse_gap(gap);
  if (cfg.command == Command::sweep && cfg.gap_cm.count < 2) {
    throw UsageError("--gap: sweep needs a range LO:HI:N{log|lin}");
  }
  if (cfg.command == Command::spectrum && cfg.gap_cm.count != 1) {
    throw UsageError("--gap: spectrum takes a single gap");
  }

  if (!material.empty()) cfg.material1 = cfg.material2 = material;
  if (!material1.empty()) cfg.material1 = material1;
  if (!material2.empty()) cfg.material2 = material2;
  (void)parse_material(cfg.material1);
  (void)parse_material(cfg.material2);

  if (!(t1 > 0.0)) throw UsageError("--T1: temperature must be positive");
  if (!(t2 > 0.0)) throw UsageError("--T2: temperature must be positive");
  if (!(temperature >= 0.0)) throw UsageError("--T: temperature must be >= 0");
  if (cfg.command == Command::correlations && !(temperature > 0.0)) {
    throw UsageError("--T: correlations need a positive surface temperature");
  }
  cfg.t1 = t1;
  cfg.t2 = t2;
  cfg.temperature = temperature;

  if (model.empty() || model == "impedance") {
    cfg.models = {ModelTag::impedance};
  } else if (model == "lifshitz-dielectric" || model == "lifshitz") {
    cfg.models = {ModelTag::lifshitz_dielectric};
  } else if (model == "both") {
    cfg.models = {ModelTag::impedance, ModelTag::lifshitz_dielectric};
  } else {
    throw UsageError("--model: unknown model '" + model +
                     "' (expected impedance, lifshitz-dielectric, both)");
  }

  cfg.quad.rel_tol = rel_tol;
  cfg.quad.abs_floor = abs_floor;
  cfg.quad.max_subdivisions = max_sub;
  cfg.matsubara.tail_rel_tol = matsubara_tol;
  cfg.matsubara.max_terms = max_terms;
  try {
    cfg.quad.validate();
    cfg.matsubara.validate();
  } catch (const UsageError& e) {
    throw UsageError(std::string("quadrature: ") + e.what());
  }
  if (ppd < 1 || ppd > 10000) throw UsageError("--points-per-decade: must lie in [1, 10000]");
  cfg.points_per_decade = ppd;

  if (!band.empty()) {
    const auto parts = split(band, ':');
    if (parts.size() != 2) throw UsageError("--band: expected LO:HI in rad/s");
    cfg.band_lo = parse_number(parts[0], "--band");
    cfg.band_hi = parse_number(parts[1], "--band");
    if (!(cfg.band_lo >= 1e8 && cfg.band_hi <= 1e16 && cfg.band_hi > cfg.band_lo)) {
      throw UsageError("--band: must satisfy 1e8 <= LO < HI <= 1e16 rad/s");
    }
  }
  if (!omega.empty()) {
    cfg.omega = parse_range(omega, "--omega",
                            [](const std::string& s) { return parse_number(s, "--omega"); });
    if (!(cfg.omega.lo > 0.0)) throw UsageError("--omega: must be positive");
  }
  if (!kperp.empty()) {
    cfg.kperp = parse_range(kperp, "--kperp",
                            [](const std::string& s) { return parse_number(s, "--kperp"); });
    if (cfg.kperp.lo < 0.0) throw UsageError("--kperp: must be >= 0");
  }

  if (format.empty() || format == "csv") {
    cfg.format = OutputFormat::csv;
  } else if (format == "json") {
    cfg.format = OutputFormat::json;
  } else {
    throw UsageError("--format: expected csv or json, got '" + format + "'");
  }

  if (!out_dir.empty()) {
    cfg.output_dir = out_dir;
  } else if (const char* env = std::getenv(kOutputDirEnv); env && *env) {
    cfg.output_dir = env;
  } else {
    cfg.output_dir = "surfimp-out";
  }
  return cfg;
}

}  // namespace surfimp::cli
