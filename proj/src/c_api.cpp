#include "surfimp/surfimp.h"

#include <algorithm>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "surfimp/casimir.hpp"
#include "surfimp/cli.hpp"
#include "surfimp/errors.hpp"
#include "surfimp/heat_transfer.hpp"
#include "surfimp/spectra.hpp"

struct surfimp_material {
  surfimp::MaterialModel model;
};

struct surfimp_run_config {
  surfimp::cli::RunConfig config;
};

namespace {

thread_local std::string last_error;

surfimp_status status_of(surfimp::ErrorKind kind) {
  using surfimp::ErrorKind;
  switch (kind) {
    case ErrorKind::domain: return SURFIMP_ERR_DOMAIN;
    case ErrorKind::range: return SURFIMP_ERR_RANGE;
    case ErrorKind::singularity: return SURFIMP_ERR_SINGULARITY;
    case ErrorKind::convergence: return SURFIMP_ERR_CONVERGENCE;
    case ErrorKind::model_mismatch: return SURFIMP_ERR_MODEL_MISMATCH;
    case ErrorKind::usage: return SURFIMP_ERR_USAGE;
    case ErrorKind::io: return SURFIMP_ERR_IO;
  }
  return SURFIMP_ERR_INTERNAL;
}

template <class F>
surfimp_status guarded(F&& f) {
  last_error.clear();
  try {
    f();
    return SURFIMP_OK;
  } catch (const surfimp::cli::HelpRequested& h) {
    last_error = h.text;
    return SURFIMP_HELP;
  } catch (const surfimp::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    last_error = e.what();
    return SURFIMP_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return SURFIMP_ERR_INTERNAL;
  }
}

template <class... P>
void require(P*... ptrs) {
  if (((ptrs == nullptr) || ...)) throw surfimp::UsageError("null pointer argument");
}

surfimp::ModelTag tag_of(surfimp_model m) {
  switch (m) {
    case SURFIMP_MODEL_IMPEDANCE: return surfimp::ModelTag::impedance;
    case SURFIMP_MODEL_LIFSHITZ_DIELECTRIC: return surfimp::ModelTag::lifshitz_dielectric;
  }
  throw surfimp::UsageError("unknown model tag " + std::to_string(static_cast<int>(m)));
}

surfimp::QuadratureConfig quad_of(const surfimp_tolerances* t) {
  surfimp::QuadratureConfig q;
  if (t) {
    q.rel_tol = t->rel_tol;
    q.abs_floor = t->abs_floor;
    q.max_subdivisions = t->max_subdivisions;
  }
  q.validate();
  return q;
}

surfimp::MatsubaraConfig mats_of(const surfimp_tolerances* t) {
  surfimp::MatsubaraConfig m;
  if (t) {
    m.tail_rel_tol = t->matsubara_tail_rel_tol;
    m.max_terms = t->matsubara_max_terms;
  }
  m.validate();
  return m;
}

surfimp_status make(surfimp_material** out, const std::function<surfimp::MaterialModel()>& f) {
  return guarded([&] {
    require(out);
    *out = nullptr;
    *out = new surfimp_material{f()};
  });
}

void store(surfimp_sectors* out, const surfimp::SectorValues& v) {
  *out = {v.te_pw, v.te_ew, v.tm_pw, v.tm_ew};
}

}  // namespace

extern "C" {

const char* surfimp_version(void) { return SURFIMP_VERSION; }
const char* surfimp_last_error(void) { return last_error.c_str(); }

const char* surfimp_status_name(surfimp_status status) {
  switch (status) {
    case SURFIMP_OK: return "ok";
    case SURFIMP_ERR_DOMAIN: return "domain";
    case SURFIMP_ERR_RANGE: return "range";
    case SURFIMP_ERR_SINGULARITY: return "singularity";
    case SURFIMP_ERR_CONVERGENCE: return "convergence";
    case SURFIMP_ERR_MODEL_MISMATCH: return "model_mismatch";
    case SURFIMP_ERR_USAGE: return "usage";
    case SURFIMP_ERR_IO: return "io";
    case SURFIMP_ERR_INTERNAL: return "internal";
    case SURFIMP_HELP: return "help";
  }
  return "unknown";
}

void surfimp_default_tolerances(surfimp_tolerances* out) {
  if (!out) return;
  const surfimp::QuadratureConfig q;
  const surfimp::MatsubaraConfig m;
  *out = {q.rel_tol, q.abs_floor, q.max_subdivisions, m.tail_rel_tol, m.max_terms};
}

surfimp_status surfimp_material_parse(const char* spec, surfimp_material** out) {
  return make(out, [&] {
    require(spec);
    return surfimp::cli::parse_material(spec);
  });
}

surfimp_status surfimp_material_ideal(surfimp_material** out) {
  return make(out, [] { return surfimp::MaterialModel::ideal(); });
}

surfimp_status surfimp_material_drude(double plasma_ev, double gamma_ev, surfimp_material** out) {
  return make(out, [&] {
    return surfimp::MaterialModel::drude_impedance(surfimp::DrudeParams::from_ev(plasma_ev, gamma_ev));
  });
}

surfimp_status surfimp_material_constant_impedance(double re, double im, surfimp_material** out) {
  return make(out, [&] { return surfimp::MaterialModel::constant_impedance({re, im}); });
}

surfimp_status surfimp_material_table(const char* csv_path, surfimp_material** out) {
  return make(out, [&] {
    require(csv_path);
    return surfimp::MaterialModel::tabulated(surfimp::ImpedanceTable::load_csv(csv_path));
  });
}

void surfimp_material_free(surfimp_material* material) { delete material; }

surfimp_status surfimp_material_describe(const surfimp_material* material, char* buf,
                                         unsigned long size) {
  return guarded([&] {
    require(material, buf);
    if (size == 0) throw surfimp::UsageError("buffer size must be positive");
    const std::string d = material->model.describe();
    const size_t n = std::min<size_t>(d.size(), size - 1);
    std::memcpy(buf, d.data(), n);
    buf[n] = '\0';
  });
}

surfimp_status surfimp_impedance(const surfimp_material* material, double omega, double* re,
                                 double* im) {
  return guarded([&] {
    require(material, re, im);
    const auto z = surfimp::impedance_of(material->model, surfimp::AngularFrequency{omega});
    *re = z.real();
    *im = z.imag();
  });
}

surfimp_status surfimp_correlations(const surfimp_material* material, double temperature,
                                    double omega, double kperp, double* te, double* tm) {
  return guarded([&] {
    require(material, te, tm);
    const surfimp::SurfaceState s{material->model, temperature};
    *te = surfimp::te_amplitude_density(surfimp::AngularFrequency{omega}, kperp, s);
    *tm = surfimp::tm_amplitude_density(surfimp::AngularFrequency{omega}, kperp, s);
  });
}

surfimp_status surfimp_heat_transfer(const surfimp_material* m1, const surfimp_material* m2,
                                     double gap_cm, double t1, double t2, surfimp_model model,
                                     const surfimp_tolerances* tol, surfimp_sectors* flux,
                                     double* abs_error) {
  return guarded([&] {
    require(m1, m2, flux);
    const surfimp::HeatCavitySpec cav{m1->model, m2->model, gap_cm, t1, t2};
    const auto r = surfimp::heat_transfer(cav, tag_of(model), quad_of(tol), {.keep_spectrum = false});
    store(flux, r.flux);
    if (abs_error) *abs_error = r.error;
  });
}

surfimp_status surfimp_heat_spectral_density(const surfimp_material* m1,
                                             const surfimp_material* m2, double gap_cm, double t1,
                                             double t2, surfimp_model model, double omega,
                                             const surfimp_tolerances* tol,
                                             surfimp_sectors* density, double* abs_error) {
  return guarded([&] {
    require(m1, m2, density);
    const surfimp::HeatCavitySpec cav{m1->model, m2->model, gap_cm, t1, t2};
    double err = 0.0;
    store(density, surfimp::heat_spectral_density(surfimp::AngularFrequency{omega}, cav,
                                                  tag_of(model), quad_of(tol), &err));
    if (abs_error) *abs_error = err;
  });
}

surfimp_status surfimp_casimir_force(const surfimp_material* m1, const surfimp_material* m2,
                                     double gap_cm, double temperature, surfimp_model model,
                                     const surfimp_tolerances* tol, double* f_te, double* f_tm,
                                     double* abs_error) {
  return guarded([&] {
    require(m1, m2, f_te, f_tm);
    const surfimp::CavitySpec cav{m1->model, m2->model, gap_cm, temperature};
    const auto r = surfimp::casimir_force(cav, tag_of(model), quad_of(tol), mats_of(tol));
    *f_te = r.parts.te;
    *f_tm = r.parts.tm;
    if (abs_error) *abs_error = r.error;
  });
}

surfimp_status surfimp_casimir_spectral_density(const surfimp_material* m1,
                                                const surfimp_material* m2, double gap_cm,
                                                double temperature, surfimp_model model,
                                                double omega, int deformed,
                                                const surfimp_tolerances* tol, double* f_te,
                                                double* f_tm, double* abs_error) {
  return guarded([&] {
    require(m1, m2, f_te, f_tm);
    const surfimp::CavitySpec cav{m1->model, m2->model, gap_cm, temperature};
    const surfimp::AngularFrequency w{omega};
    double err = 0.0;
    if (deformed) {
      const auto v = surfimp::casimir_spectral_density_deformed(w, cav, tag_of(model),
                                                                quad_of(tol), &err);
      *f_te = v.te;
      *f_tm = v.tm;
    } else {
      const auto v = surfimp::casimir_spectral_density(w, cav, tag_of(model), quad_of(tol), &err);
      *f_te = v.te();
      *f_tm = v.tm();
    }
    if (abs_error) *abs_error = err;
  });
}

surfimp_status surfimp_thermal_te_correction(const surfimp_material* m1,
                                             const surfimp_material* m2, double gap_cm,
                                             double temperature, surfimp_model model,
                                             const surfimp_tolerances* tol, double* delta) {
  return guarded([&] {
    require(m1, m2, delta);
    const surfimp::CavitySpec cav{m1->model, m2->model, gap_cm, temperature};
    *delta = surfimp::thermal_te_correction(cav, tag_of(model), quad_of(tol), mats_of(tol));
  });
}

double surfimp_ideal_casimir_force(double gap_cm) { return surfimp::ideal_casimir_force(gap_cm); }

surfimp_status surfimp_cli_parse(int argc, const char* const* argv, surfimp_run_config** out) {
  return guarded([&] {
    require(out);
    *out = nullptr;
    if (argc < 0 || (argc > 0 && argv == nullptr)) throw surfimp::UsageError("bad argv");
    std::vector<std::string> args(argv, argv + argc);
    *out = new surfimp_run_config{surfimp::cli::parse_config(args)};
  });
}

surfimp_status surfimp_cli_run(const surfimp_run_config* config, int quiet, int* exit_code) {
  return guarded([&] {
    require(config, exit_code);
    std::ostringstream sink;
    const auto outcome = surfimp::cli::run(config->config, quiet ? sink : std::cerr);
    *exit_code = outcome.exit_code;
    last_error = outcome.error;
  });
}

void surfimp_run_config_free(surfimp_run_config* config) { delete config; }

int surfimp_exit_code(surfimp_status status) {
  switch (status) {
    case SURFIMP_OK:
    case SURFIMP_HELP:
      return 0;
    case SURFIMP_ERR_USAGE:
    case SURFIMP_ERR_DOMAIN:
    case SURFIMP_ERR_RANGE:
    case SURFIMP_ERR_MODEL_MISMATCH:
      return 2;
    case SURFIMP_ERR_CONVERGENCE:
    case SURFIMP_ERR_SINGULARITY:
      return 3;
    case SURFIMP_ERR_IO:
      return 4;
    case SURFIMP_ERR_INTERNAL:
      return 1;
  }
  return 1;
}

}  // extern "C"
