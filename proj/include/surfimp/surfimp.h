/* C interface to the surfimp engine. All functions return a status code;
 * on failure surfimp_last_error() describes the problem (per thread). */
#ifndef SURFIMP_H
#define SURFIMP_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(SURFIMP_BUILDING_LIBRARY)
#define SURFIMP_API __attribute__((visibility("default")))
#else
#define SURFIMP_API
#endif

typedef enum surfimp_status {
  SURFIMP_OK = 0,
  SURFIMP_ERR_DOMAIN = 1,
  SURFIMP_ERR_RANGE = 2,
  SURFIMP_ERR_SINGULARITY = 3,
  SURFIMP_ERR_CONVERGENCE = 4,
  SURFIMP_ERR_MODEL_MISMATCH = 5,
  SURFIMP_ERR_USAGE = 6,
  SURFIMP_ERR_IO = 7,
  SURFIMP_ERR_INTERNAL = 8,
  SURFIMP_HELP = 9 /* help requested; text in surfimp_last_error() */
} surfimp_status;

typedef enum surfimp_model {
  SURFIMP_MODEL_IMPEDANCE = 0,
  SURFIMP_MODEL_LIFSHITZ_DIELECTRIC = 1
} surfimp_model;

typedef struct surfimp_material surfimp_material;
typedef struct surfimp_run_config surfimp_run_config;

typedef struct surfimp_tolerances {
  double rel_tol;
  double abs_floor;
  int max_subdivisions;
  double matsubara_tail_rel_tol;
  long matsubara_max_terms;
} surfimp_tolerances;

/* Per-sector split: propagating (pw) and evanescent (ew) waves. */
typedef struct surfimp_sectors {
  double te_pw, te_ew, tm_pw, tm_ew;
} surfimp_sectors;

SURFIMP_API const char* surfimp_version(void);
SURFIMP_API const char* surfimp_last_error(void);
SURFIMP_API const char* surfimp_status_name(surfimp_status status);
SURFIMP_API void surfimp_default_tolerances(surfimp_tolerances* out);

/* Materials. Spec strings: ideal, drude:11.5eV,0.05eV, impedance:RE,IM, table:PATH */
SURFIMP_API surfimp_status surfimp_material_parse(const char* spec, surfimp_material** out);
SURFIMP_API surfimp_status surfimp_material_ideal(surfimp_material** out);
SURFIMP_API surfimp_status surfimp_material_drude(double hbar_plasma_ev, double hbar_gamma_ev,
                                                  surfimp_material** out);
SURFIMP_API surfimp_status surfimp_material_constant_impedance(double re, double im,
                                                               surfimp_material** out);
SURFIMP_API surfimp_status surfimp_material_table(const char* csv_path, surfimp_material** out);
SURFIMP_API void surfimp_material_free(surfimp_material* material);
/* Writes a NUL-terminated description, truncated to `size`. */
SURFIMP_API surfimp_status surfimp_material_describe(const surfimp_material* material, char* buf,
                                                     unsigned long size);

/* Surface impedance at real omega (rad/s). */
SURFIMP_API surfimp_status surfimp_impedance(const surfimp_material* material, double omega,
                                             double* re, double* im);

/* TE/TM amplitude spectral densities of one surface at temperature T (K). */
SURFIMP_API surfimp_status surfimp_correlations(const surfimp_material* material,
                                                double temperature, double omega, double kperp,
                                                double* te, double* tm);

/* Net heat flux plate 1 -> plate 2, erg/(s cm^2). Gap in cm. NULL tolerances
 * use the defaults; `abs_error` may be NULL. */
SURFIMP_API surfimp_status surfimp_heat_transfer(const surfimp_material* m1,
                                                 const surfimp_material* m2, double gap_cm,
                                                 double t1, double t2, surfimp_model model,
                                                 const surfimp_tolerances* tol,
                                                 surfimp_sectors* flux, double* abs_error);
SURFIMP_API surfimp_status surfimp_heat_spectral_density(
    const surfimp_material* m1, const surfimp_material* m2, double gap_cm, double t1, double t2,
    surfimp_model model, double omega, const surfimp_tolerances* tol, surfimp_sectors* density,
    double* abs_error);

/* Casimir pressure at temperature T (T = 0 allowed), dyn/cm^2, positive = attraction. */
SURFIMP_API surfimp_status surfimp_casimir_force(const surfimp_material* m1,
                                                 const surfimp_material* m2, double gap_cm,
                                                 double temperature, surfimp_model model,
                                                 const surfimp_tolerances* tol, double* f_te,
                                                 double* f_tm, double* abs_error);
/* Real-frequency spectral density of the pressure. `deformed` != 0 integrates
 * along p = 1 + i t instead of the real/imaginary p legs. */
SURFIMP_API surfimp_status surfimp_casimir_spectral_density(
    const surfimp_material* m1, const surfimp_material* m2, double gap_cm, double temperature,
    surfimp_model model, double omega, int deformed, const surfimp_tolerances* tol, double* f_te,
    double* f_tm, double* abs_error);
/* F_TE(T) - F_TE(0). */
SURFIMP_API surfimp_status surfimp_thermal_te_correction(const surfimp_material* m1,
                                                         const surfimp_material* m2,
                                                         double gap_cm, double temperature,
                                                         surfimp_model model,
                                                         const surfimp_tolerances* tol,
                                                         double* delta);
SURFIMP_API double surfimp_ideal_casimir_force(double gap_cm);

/* Command-line runs. argv excludes the program name. */
SURFIMP_API surfimp_status surfimp_cli_parse(int argc, const char* const* argv,
                                             surfimp_run_config** out);
/* Executes the run; progress goes to stderr unless `quiet`. */
SURFIMP_API surfimp_status surfimp_cli_run(const surfimp_run_config* config, int quiet,
                                           int* exit_code);
SURFIMP_API void surfimp_run_config_free(surfimp_run_config* config);
/* Process exit code for a status: 0 ok, 2 usage, 3 convergence, 4 I/O, 1 other. */
SURFIMP_API int surfimp_exit_code(surfimp_status status);

#ifdef __cplusplus
}
#endif

#endif
