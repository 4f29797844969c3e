#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "surfimp/casimir.hpp"
#include "surfimp/cli.hpp"
#include "surfimp/constants.hpp"
#include "surfimp/errors.hpp"
#include "surfimp/heat_transfer.hpp"
#include "surfimp/spectra.hpp"

#ifndef SURFIMP_VERSION
#define SURFIMP_VERSION "0.0.0"
#endif

namespace surfimp::cli {

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

// Same rounding as the CSV so both formats carry identical numbers.
double rounded(double v) { return std::stod(fmt(v)); }

const char* model_column(ModelTag tag) {
  return tag == ModelTag::impedance ? "impedance" : "lifshitz-dielectric";
}

// One table, emitted as CSV or as JSON with the same column names.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // numbers pre-formatted; text cells verbatim
  std::vector<bool> numeric;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

fs::path write_table(const Table& t, const fs::path& dir, const std::string& stem,
                     OutputFormat format) {
  std::string text;
  fs::path path;
  if (format == OutputFormat::csv) {
    path = dir / (stem + ".csv");
    for (size_t i = 0; i < t.columns.size(); ++i) text += (i ? "," : "") + t.columns[i];
    text += '\n';
    for (const auto& row : t.rows) {
      for (size_t i = 0; i < row.size(); ++i) text += (i ? "," : "") + row[i];
      text += '\n';
    }
  } else {
    path = dir / (stem + ".json");
    ordered_json j;
    j["columns"] = t.columns;
    j["rows"] = ordered_json::array();
    for (const auto& row : t.rows) {
      ordered_json r;
      for (size_t i = 0; i < row.size(); ++i) {
        if (t.numeric[i]) {
          r[t.columns[i]] = std::stod(row[i]);
        } else {
          r[t.columns[i]] = row[i];
        }
      }
      j["rows"].push_back(std::move(r));
    }
    text = j.dump(2) + "\n";
  }
  write_text(path, text);
  return path;
}

// Runs fn(0..n-1) on a small pool. Results land by index; the lowest-index
// failure is rethrown after all workers stop.
void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
  const size_t workers =
      std::min<size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::exception_ptr> failures(n);
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  auto body = [&] {
    for (size_t i = next++; i < n && !failed; i = next++) {
      try {
        fn(i);
      } catch (...) {
        failures[i] = std::current_exception();
        failed = true;
      }
    }
  };
  if (workers <= 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
  }
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

ordered_json range_json(const Range& r) {
  return {{"lo", r.lo}, {"hi", r.hi}, {"count", r.count}, {"log_spacing", r.log_spacing}};
}

ordered_json config_json(const RunConfig& c) {
  ordered_json j;
  j["command"] = to_string(c.command);
  if (c.command == Command::sweep) j["sweep_target"] = to_string(c.sweep_target);
  j["material1"] = {{"spec", c.material1}, {"resolved", parse_material(c.material1).describe()}};
  j["material2"] = {{"spec", c.material2}, {"resolved", parse_material(c.material2).describe()}};
  j["gap_cm"] = range_json(c.gap_cm);
  j["gap_values_cm"] = c.gap_cm.values();
  j["T1_K"] = c.t1;
  j["T2_K"] = c.t2;
  j["T_K"] = c.temperature;
  j["models"] = ordered_json::array();
  for (ModelTag m : c.models) j["models"].push_back(model_column(m));
  j["quadrature"] = {{"rel_tol", c.quad.rel_tol},
                     {"abs_floor", c.quad.abs_floor},
                     {"max_subdivisions", c.quad.max_subdivisions}};
  j["matsubara"] = {{"tail_rel_tol", c.matsubara.tail_rel_tol},
                    {"max_terms", c.matsubara.max_terms}};
  j["band_rad_s"] = {c.band_lo, c.band_hi};
  j["points_per_decade"] = c.points_per_decade;
  j["omega_rad_s"] = range_json(c.omega);
  j["kperp_per_cm"] = range_json(c.kperp);
  j["format"] = to_string(c.format);
  j["output_dir"] = c.output_dir.string();
  j["config_file"] = c.config_file ? ordered_json(c.config_file->string()) : ordered_json(nullptr);
  return j;
}

ordered_json constants_json() {
  return {{"hbar_erg_s", constants::hbar},
          {"k_B_erg_per_K", constants::k_boltzmann},
          {"c_cm_per_s", constants::c},
          {"erg_per_eV", constants::erg_per_ev},
          {"pi", constants::pi}};
}

ordered_json error_json(const std::exception& e) {
  ordered_json j;
  j["message"] = e.what();
  if (auto* err = dynamic_cast<const Error*>(&e)) {
    static constexpr const char* names[] = {"domain", "range", "singularity", "convergence",
                                            "model_mismatch", "usage", "io"};
    j["kind"] = names[static_cast<int>(err->kind())];
  } else {
    j["kind"] = "internal";
  }
  if (auto* c = dynamic_cast<const ConvergenceError*>(&e)) j["context"] = c->context();
  if (auto* s = dynamic_cast<const SingularityError*>(&e)) {
    j["omega_rad_s"] = s->omega();
    j["p"] = {s->p().real(), s->p().imag()};
  }
  return j;
}

struct Job {
  double gap_cm;
  ModelTag model;
};

std::vector<Job> jobs_for(const RunConfig& c) {
  std::vector<Job> jobs;
  for (ModelTag m : c.models) {
    for (double L : c.gap_cm.values()) jobs.push_back({L, m});
  }
  return jobs;
}

Table heat_rows(const RunConfig& c, ordered_json& results, std::ostream& log) {
  const auto jobs = jobs_for(c);
  std::vector<HeatResult> out(jobs.size());
  HeatCavitySpec base{parse_material(c.material1), parse_material(c.material2), 1.0, c.t1, c.t2};
  std::mutex log_mutex;
  parallel_for(jobs.size(), [&](size_t i) {
    HeatCavitySpec cav = base;
    cav.gap_cm = jobs[i].gap_cm;
    out[i] = heat_transfer(cav, jobs[i].model, c.quad, {.keep_spectrum = false});
    std::lock_guard lock(log_mutex);
    log << "heat-transfer L=" << fmt(jobs[i].gap_cm / constants::cm_per_um) << " um "
        << model_column(jobs[i].model) << ": S=" << fmt(out[i].flux.total()) << " erg/(s cm^2)\n";
  });
  Table t{{"L_um", "S_erg_s_cm2", "S_TE_pw", "S_TE_ew", "S_TM_pw", "S_TM_ew", "model"}, {},
          {true, true, true, true, true, true, false}};
  for (size_t i = 0; i < jobs.size(); ++i) {
    const SectorValues& f = out[i].flux;
    t.add({fmt(jobs[i].gap_cm / constants::cm_per_um), fmt(f.total()), fmt(f.te_pw),
           fmt(f.te_ew), fmt(f.tm_pw), fmt(f.tm_ew), model_column(jobs[i].model)});
    results.push_back({{"L_um", rounded(jobs[i].gap_cm / constants::cm_per_um)},
                       {"model", model_column(jobs[i].model)},
                       {"abs_error", out[i].error},
                       {"evaluations", out[i].evaluations}});
  }
  return t;
}

Table casimir_rows(const RunConfig& c, ordered_json& results, std::ostream& log) {
  const auto jobs = jobs_for(c);
  std::vector<ForceDecomposition> out(jobs.size());
  CavitySpec base{parse_material(c.material1), parse_material(c.material2), 1.0, c.temperature};
  std::mutex log_mutex;
  parallel_for(jobs.size(), [&](size_t i) {
    CavitySpec cav = base;
    cav.gap_cm = jobs[i].gap_cm;
    out[i] = casimir_force(cav, jobs[i].model, c.quad, c.matsubara);
    std::lock_guard lock(log_mutex);
    log << "casimir L=" << fmt(jobs[i].gap_cm / constants::cm_per_um) << " um "
        << model_column(jobs[i].model) << ": F=" << fmt(out[i].total()) << " dyn/cm^2\n";
  });
  Table t{{"L_um", "F_dyn_cm2", "F_TE", "F_TM", "model"}, {}, {true, true, true, true, false}};
  for (size_t i = 0; i < jobs.size(); ++i) {
    const auto& f = out[i];
    t.add({fmt(jobs[i].gap_cm / constants::cm_per_um), fmt(f.total()), fmt(f.parts.te),
           fmt(f.parts.tm), model_column(jobs[i].model)});
    results.push_back({{"L_um", rounded(jobs[i].gap_cm / constants::cm_per_um)},
                       {"model", model_column(jobs[i].model)},
                       {"abs_error", f.error},
                       {"matsubara_terms", f.matsubara_terms},
                       {"static_limit", f.static_limit}});
  }
  return t;
}

std::vector<Table> spectrum_tables(const RunConfig& c, ordered_json& results, std::ostream& log) {
  const HeatCavitySpec cav{parse_material(c.material1), parse_material(c.material2),
                           c.gap_cm.lo, c.t1, c.t2};
  cav.validate();
  const auto grid = log_grid(c.band_lo, c.band_hi, c.points_per_decade);
  std::vector<std::vector<SectorValues>> s(c.models.size(), std::vector<SectorValues>(grid.size()));
  std::vector<std::vector<double>> err(c.models.size(), std::vector<double>(grid.size()));
  parallel_for(c.models.size() * grid.size(), [&](size_t k) {
    const size_t m = k / grid.size(), i = k % grid.size();
    s[m][i] = heat_spectral_density(AngularFrequency{grid[i]}, cav, c.models[m], c.quad,
                                    &err[m][i]);
  });

  Table t{{"log10_omega", "s_total", "s_TE_ew", "s_TM_ew", "s_pw", "model"}, {},
          {true, true, true, true, true, false}};
  for (size_t m = 0; m < c.models.size(); ++m) {
    double max_err = 0.0;
    for (size_t i = 0; i < grid.size(); ++i) {
      const SectorValues& v = s[m][i];
      t.add({fmt(std::log10(grid[i])), fmt(v.total()), fmt(v.te_ew), fmt(v.tm_ew),
             fmt(v.te_pw + v.tm_pw), model_column(c.models[m])});
      max_err = std::max(max_err, err[m][i]);
    }
    results.push_back({{"model", model_column(c.models[m])},
                       {"points", grid.size()},
                       {"max_abs_error", max_err},
                       {"abs_error", err[m]}});
    log << "spectrum " << model_column(c.models[m]) << ": " << grid.size() << " points\n";
  }
  std::vector<Table> tables{std::move(t)};
  if (c.model_both()) {
    Table d{{"log10_omega", "s_TE_ew_impedance", "s_TE_ew_lifshitz", "difference"}, {},
            {true, true, true, true}};
    for (size_t i = 0; i < grid.size(); ++i) {
      const double a = s[0][i].te_ew, b = s[1][i].te_ew;
      d.add({fmt(std::log10(grid[i])), fmt(a), fmt(b), fmt(a - b)});
    }
    tables.push_back(std::move(d));
  }
  return tables;
}

Table correlation_rows(const RunConfig& c, std::ostream& log) {
  const SurfaceState surface{parse_material(c.material1), c.temperature};
  const auto omegas = c.omega.values();
  const auto kperps = c.kperp.values();
  Table t{{"omega", "kperp", "te_density", "tm_density"}, {}, {true, true, true, true}};
  for (double w : omegas) {
    for (double k : kperps) {
      t.add({fmt(w), fmt(k), fmt(te_amplitude_density(AngularFrequency{w}, k, surface)),
             fmt(tm_amplitude_density(AngularFrequency{w}, k, surface))});
    }
  }
  log << "correlations: " << t.rows.size() << " points\n";
  return t;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::usage:
    case ErrorKind::domain:
    case ErrorKind::range:
    case ErrorKind::model_mismatch:
      return 2;
    case ErrorKind::convergence:
    case ErrorKind::singularity:
      return 3;
    case ErrorKind::io:
      return 4;
  }
  return 1;
}

RunOutcome run(const RunConfig& config, std::ostream& log) {
  RunOutcome outcome;
  const auto start = std::chrono::steady_clock::now();
  ordered_json manifest;
  manifest["tool"] = "surfimp";
  manifest["version"] = SURFIMP_VERSION;
  manifest["args"] = config.args;
  manifest["constants"] = constants_json();
  ordered_json results = ordered_json::array();

  const fs::path dir = config.output_dir.empty() ? fs::path("surfimp-out") : config.output_dir;
  try {
    manifest["config"] = config_json(config);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

    std::vector<std::pair<Table, std::string>> tables;
    const Command what = config.command == Command::sweep ? config.sweep_target : config.command;
    const std::string prefix = config.command == Command::sweep ? "sweep_" : "";
    switch (what) {
      case Command::heat_transfer:
        tables.emplace_back(heat_rows(config, results, log), prefix + "heat_transfer");
        break;
      case Command::casimir:
        tables.emplace_back(casimir_rows(config, results, log), prefix + "casimir");
        break;
      case Command::spectrum: {
        auto t = spectrum_tables(config, results, log);
        tables.emplace_back(std::move(t[0]), "spectrum");
        if (t.size() > 1) tables.emplace_back(std::move(t[1]), "spectral_difference");
        break;
      }
      case Command::correlations:
        tables.emplace_back(correlation_rows(config, log), "correlations");
        break;
      case Command::sweep:
        throw UsageError("--command: sweep cannot target sweep");
    }
    for (const auto& [table, stem] : tables) {
      outcome.outputs.push_back(write_table(table, dir, stem, config.format));
    }
    manifest["status"] = "ok";
  } catch (const std::exception& e) {
    manifest["status"] = "error";
    manifest["error"] = error_json(e);
    auto* err = dynamic_cast<const Error*>(&e);
    outcome.exit_code = err ? exit_code_for(err->kind()) : 1;
    outcome.error = e.what();
    log << "error: " << e.what() << "\n";
  }

  manifest["results"] = std::move(results);
  manifest["outputs"] = ordered_json::array();
  for (const auto& p : outcome.outputs) manifest["outputs"].push_back(p.filename().string());
  manifest["wall_clock_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  outcome.manifest = dir / "manifest.json";
  try {
    std::error_code ec;
    fs::create_directories(dir, ec);
    write_text(outcome.manifest, manifest.dump(2) + "\n");
  } catch (const IoError& e) {
    log << "error: " << e.what() << "\n";
    if (outcome.exit_code == 0) {
      outcome.exit_code = exit_code_for(ErrorKind::io);
      outcome.error = e.what();
    }
    outcome.manifest.clear();
  }
  return outcome;
}

}  // namespace surfimp::cli
