#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "surfimp/cli.hpp"
#include "surfimp/errors.hpp"

using namespace surfimp;
using namespace surfimp::cli;
namespace fs = std::filesystem;

namespace {

RunConfig parse(std::vector<std::string> args) { return parse_config(args); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string l; std::getline(ss, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
  return out;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(SURFIMP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("defaults for a heat run") {
  const RunConfig c = parse({"heat-transfer", "--gap", "0.3um", "--model", "both"});
  CHECK(c.command == Command::heat_transfer);
  CHECK(c.gap_cm.count == 1);
  CHECK(c.gap_cm.lo == doctest::Approx(3e-5));
  CHECK(c.t1 == 323.0);
  CHECK(c.t2 == 300.0);
  CHECK(c.material1 == "drude:11.5eV,0.05eV");
  CHECK(c.material2 == "drude:11.5eV,0.05eV");
  CHECK(c.model_both());
  CHECK(c.quad.rel_tol == 1e-6);
}

TEST_CASE("usage errors name the field") {
  auto message = [](std::vector<std::string> args) -> std::string {
    try {
      (void)parse_config(args);
    } catch (const UsageError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(message({"heat-transfer", "--gap", "0"}).find("--gap") != std::string::npos);
  CHECK(message({"heat-transfer"}).find("--gap") != std::string::npos);
  CHECK(message({"casimir", "--gap", "1um", "--material", "drude:11.5eV"}).find("--material") != std::string::npos);
  CHECK(message({"casimir", "--gap", "1um", "--material", "gold"}).find("--material") != std::string::npos);
  CHECK(message({"casimir", "--gap", "1um", "--frobnicate", "3"}).find("frobnicate") != std::string::npos);
  CHECK(message({"casimir", "--gap", "1um", "--model", "plasma"}).find("--model") != std::string::npos);
  CHECK(message({"casimir", "--gap", "1um", "--rel-tol", "0.5"}).find("rel_tol") != std::string::npos);
  CHECK(message({"warp", "--gap", "1um"}).find("command") != std::string::npos);
  CHECK(message({"sweep", "--gap", "1um", "--command", "heat-transfer"}).find("--gap") != std::string::npos);
  CHECK(message({"sweep", "--gap", "0.1um:3um:40log"}).find("--command") != std::string::npos);
  CHECK(message({"spectrum", "--gap", "0.3um", "--band", "1e7:1e16"}).find("--band") != std::string::npos);
  CHECK(message({"casimir", "--gap", "1um", "--format", "xml"}).find("--format") != std::string::npos);
  CHECK(message({"casimir", "--gap", "1um", "--T", "-3"}).find("--T") != std::string::npos);
}

TEST_CASE("help") {
  CHECK_THROWS_AS(parse({"--help"}), HelpRequested);
}

TEST_CASE("lengths, ranges and materials") {
  CHECK(parse_length_cm("300nm", "x") == doctest::Approx(3e-5));
  CHECK(parse_length_cm("2", "x") == doctest::Approx(2e-4));
  CHECK(parse_length_cm("1e-4cm", "x") == doctest::Approx(1e-4));
  const Range r = parse_gap("0.1um:3um:40log");
  CHECK(r.count == 40);
  const auto v = r.values();
  CHECK(v.size() == 40);
  CHECK(v.front() == doctest::Approx(1e-5));
  CHECK(v.back() == doctest::Approx(3e-4));
  CHECK(v[1] / v[0] == doctest::Approx(v[39] / v[38]));
  const auto lin = parse_gap("1um:2um:3lin").values();
  CHECK(lin[1] == doctest::Approx(1.5e-4));
  CHECK_THROWS_AS(parse_gap("1um:2um:3"), UsageError);
  CHECK_THROWS_AS(parse_gap("2um:1um:3log"), UsageError);
  CHECK(parse_material("ideal").is_ideal());
  CHECK(parse_material("impedance:1e-3,-2e-3").describe().find("impedance") != std::string::npos);
  CHECK_THROWS_AS(parse_material("impedance:-1,0"), UsageError);
  CHECK_THROWS_AS(parse_material("table:/nonexistent.csv"), IoError);
}

TEST_CASE("config file values apply unless overridden by flags") {
  const auto dir = oracle::scratch_dir("cfg");
  std::ofstream(dir / "run.ini") << "gap = 2um\nT = 77\nmodel = lifshitz-dielectric\nrel-tol = 1e-5\n";
  const RunConfig c = parse({"casimir", "--config", (dir / "run.ini").string(), "--T", "300"});
  CHECK(c.gap_cm.lo == doctest::Approx(2e-4));
  CHECK(c.temperature == 300.0);
  CHECK(c.models == std::vector<ModelTag>{ModelTag::lifshitz_dielectric});
  CHECK(c.quad.rel_tol == 1e-5);
  CHECK(c.config_file.has_value());
  std::ofstream(dir / "bad.ini") << "gravity = 9.8\n";
  CHECK_THROWS_AS(parse({"casimir", "--gap", "1um", "--config", (dir / "bad.ini").string()}), UsageError);
  CHECK_THROWS_AS(parse({"casimir", "--gap", "1um", "--config", (dir / "none.ini").string()}), IoError);
  fs::remove_all(dir);
}

TEST_CASE("output directory defaults to the environment") {
  ::setenv(kOutputDirEnv, "/tmp/surfimp-env-dir", 1);
  CHECK(parse({"casimir", "--gap", "1um"}).output_dir == "/tmp/surfimp-env-dir");
  CHECK(parse({"casimir", "--gap", "1um", "--out", "here"}).output_dir == "here");
  ::unsetenv(kOutputDirEnv);
  CHECK(parse({"casimir", "--gap", "1um"}).output_dir == "surfimp-out");
}

TEST_CASE("heat run writes a schema-conformant table and a manifest") {
  const auto dir = oracle::scratch_dir("heat");
  RunConfig c = parse({"heat-transfer", "--gap", "0.3um", "--model", "both", "--out", dir.string()});
  std::ostringstream log;
  const RunOutcome o = run(c, log);
  REQUIRE(o.exit_code == 0);
  const auto rows = lines(slurp(dir / "heat_transfer.csv"));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "L_um,S_erg_s_cm2,S_TE_pw,S_TE_ew,S_TM_pw,S_TM_ew,model");
  CHECK(split(rows[1]).back() == "impedance");
  CHECK(split(rows[2]).back() == "lifshitz-dielectric");
  const auto f = split(rows[1]);
  const double total = std::stod(f[1]);
  const double sum = std::stod(f[2]) + std::stod(f[3]) + std::stod(f[4]) + std::stod(f[5]);
  CHECK(total == doctest::Approx(sum).epsilon(1e-10));
  CHECK(f[1].find('e') != std::string::npos);

  const auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(m["status"] == "ok");
  CHECK(m["args"].get<std::vector<std::string>>() == c.args);
  CHECK(m["constants"]["hbar_erg_s"] == 1.054571817e-27);
  CHECK(m["results"].size() == 2);
  CHECK(m["results"][0]["abs_error"].get<double>() > 0.0);
  CHECK(m["config"]["T1_K"] == 323.0);
  CHECK(m.contains("wall_clock_s"));
  fs::remove_all(dir);
}

TEST_CASE("casimir run: verbatim args, JSON mirrors CSV") {
  const auto dir = oracle::scratch_dir("casimir");
  const std::vector<std::string> args = {"casimir", "--gap", "1um", "--T", "300", "--material",
                                         "drude:11.5eV,0.05eV", "--model", "impedance",
                                         "--out", (dir / "csv").string()};
  std::ostringstream log;
  REQUIRE(run(parse(args), log).exit_code == 0);
  const auto m = nlohmann::json::parse(slurp(dir / "csv" / "manifest.json"));
  CHECK(m["args"].get<std::vector<std::string>>() == args);
  CHECK(m["results"][0]["static_limit"].get<std::string>().find("TE") != std::string::npos);
  CHECK(m["results"][0]["matsubara_terms"].get<long>() > 0);

  auto json_args = args;
  json_args.back() = (dir / "json").string();
  json_args.insert(json_args.end(), {"--format", "json"});
  REQUIRE(run(parse(json_args), log).exit_code == 0);
  const auto j = nlohmann::json::parse(slurp(dir / "json" / "casimir.json"));
  const auto csv = lines(slurp(dir / "csv" / "casimir.csv"));
  CHECK(j["columns"].get<std::vector<std::string>>() == split(csv[0]));
  const auto row = split(csv[1]);
  CHECK(j["rows"][0]["F_dyn_cm2"].get<double>() == std::stod(row[1]));
  CHECK(j["rows"][0]["model"] == "impedance");
  fs::remove_all(dir);
}

TEST_CASE("identical configurations give byte-identical tables; replay reproduces") {
  const auto dir = oracle::scratch_dir("det");
  std::ostringstream log;
  for (const char* sub : {"a", "b"}) {
    REQUIRE(run(parse({"casimir", "--gap", "0.5um:2um:3log", "--model", "both", "--out", (dir / sub).string()}), log)
                .exit_code == 0);
  }
  CHECK(slurp(dir / "a" / "casimir.csv") == slurp(dir / "b" / "casimir.csv"));
  const RunConfig replay = parse({"--replay", (dir / "a" / "manifest.json").string(), "--out", (dir / "c").string()});
  REQUIRE(run(replay, log).exit_code == 0);
  CHECK(slurp(dir / "a" / "casimir.csv") == slurp(dir / "c" / "casimir.csv"));
  fs::remove_all(dir);
}

TEST_CASE("sweep produces one row per gap and model") {
  const auto dir = oracle::scratch_dir("sweep");
  std::ostringstream log;
  const RunConfig c = parse({"sweep", "--gap", "0.1um:3um:40log", "--command", "heat-transfer", "--model", "both",
                             "--out", dir.string()});
  REQUIRE(run(c, log).exit_code == 0);
  const auto rows = lines(slurp(dir / "sweep_heat_transfer.csv"));
  REQUIRE(rows.size() == 81);
  int imp = 0, lif = 0;
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto f = split(rows[i]);
    (f.back() == "impedance" ? imp : lif)++;
    CHECK(std::stod(f[1]) > 0.0);
  }
  CHECK(imp == 40);
  CHECK(lif == 40);
  // rows stay in order: ascending L within each model block
  CHECK(std::stod(split(rows[1])[0]) < std::stod(split(rows[2])[0]));
  fs::remove_all(dir);
}

TEST_CASE("spectrum with both models adds the TE-evanescent difference") {
  const auto dir = oracle::scratch_dir("spec");
  std::ostringstream log;
  const RunConfig c = parse({"spectrum", "--gap", "0.3um", "--band", "1e8:1e16", "--model", "both",
                             "--points-per-decade", "10", "--out", dir.string()});
  REQUIRE(run(c, log).exit_code == 0);
  const auto spec = lines(slurp(dir / "spectrum.csv"));
  CHECK(spec[0] == "log10_omega,s_total,s_TE_ew,s_TM_ew,s_pw,model");
  CHECK(spec.size() == 1 + 2 * 81);
  const auto diff = lines(slurp(dir / "spectral_difference.csv"));
  CHECK(diff[0] == "log10_omega,s_TE_ew_impedance,s_TE_ew_lifshitz,difference");
  CHECK(diff.size() == 82);
  CHECK(std::stod(split(diff[1])[0]) == doctest::Approx(8.0));
  fs::remove_all(dir);
}

TEST_CASE("correlations table") {
  const auto dir = oracle::scratch_dir("corr");
  std::ostringstream log;
  REQUIRE(run(parse({"correlations", "--omega", "1e12:1e14:3log", "--kperp", "0:1e4:2lin", "--out", dir.string()}),
              log)
              .exit_code == 0);
  const auto rows = lines(slurp(dir / "correlations.csv"));
  CHECK(rows[0] == "omega,kperp,te_density,tm_density");
  CHECK(rows.size() == 7);
  fs::remove_all(dir);
}

TEST_CASE("convergence failure: exit 3, context in the manifest, no table") {
  const auto dir = oracle::scratch_dir("fail");
  std::ostringstream log;
  const RunConfig c = parse({"heat-transfer", "--gap", "0.3um", "--rel-tol", "1e-15", "--abs-floor", "0",
                             "--max-subdivisions", "10", "--out", dir.string()});
  const RunOutcome o = run(c, log);
  CHECK(o.exit_code == 3);
  CHECK_FALSE(fs::exists(dir / "heat_transfer.csv"));
  const auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(m["status"] == "error");
  CHECK(m["error"]["kind"] == "convergence");
  CHECK_FALSE(m["error"]["context"].get<std::string>().empty());
  fs::remove_all(dir);
}

TEST_CASE("exit code mapping") {
  CHECK(exit_code_for(ErrorKind::usage) == 2);
  CHECK(exit_code_for(ErrorKind::convergence) == 3);
  CHECK(exit_code_for(ErrorKind::io) == 4);
}

TEST_CASE("command-line binary") {
  const auto dir = oracle::scratch_dir("bin");
  CHECK(run_binary("casimir --gap 1um --out " + dir.string()) == 0);
  CHECK(fs::exists(dir / "casimir.csv"));
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(run_binary("--help") == 0);
  CHECK(run_binary("heat-transfer --gap 0") == 2);
  CHECK(run_binary("casimir --gap 1um --config /nonexistent/run.ini") == 4);
  CHECK(run_binary("casimir --gap 1um --out /proc/forbidden") == 4);
  fs::remove_all(dir);
}

}  // TEST_SUITE
