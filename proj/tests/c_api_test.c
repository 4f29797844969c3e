/* Exercises the shared library through its C header only. */
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "surfimp/surfimp.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static int close_rel(double a, double b, double tol) { return fabs(a - b) <= tol * fabs(b); }

int main(void) {
  surfimp_material* al = NULL;
  surfimp_material* ideal = NULL;
  surfimp_material* bad = NULL;
  char buf[256];

  EXPECT(strcmp(surfimp_version(), "") != 0);
  EXPECT(surfimp_material_parse("drude:11.5eV,0.05eV", &al) == SURFIMP_OK);
  EXPECT(al != NULL);
  EXPECT(surfimp_material_ideal(&ideal) == SURFIMP_OK);
  EXPECT(surfimp_material_parse("drude:oops", &bad) == SURFIMP_ERR_USAGE);
  EXPECT(bad == NULL);
  EXPECT(strstr(surfimp_last_error(), "--material") != NULL);
  EXPECT(surfimp_material_constant_impedance(-1.0, 0.0, &bad) == SURFIMP_ERR_DOMAIN);
  EXPECT(surfimp_material_table("/nonexistent.csv", &bad) == SURFIMP_ERR_IO);
  EXPECT(surfimp_material_parse(NULL, &bad) == SURFIMP_ERR_USAGE);

  EXPECT(surfimp_material_describe(al, buf, sizeof buf) == SURFIMP_OK);
  EXPECT(strstr(buf, "drude") != NULL);
  EXPECT(surfimp_material_describe(al, buf, 4) == SURFIMP_OK);
  EXPECT(strlen(buf) == 3);

  double re = 0, im = 0;
  EXPECT(surfimp_impedance(al, 1e13, &re, &im) == SURFIMP_OK);
  EXPECT(re > 0.0 && im < 0.0);

  double te = 0, tm = 0;
  EXPECT(surfimp_correlations(al, 300.0, 1e13, 0.0, &te, &tm) == SURFIMP_OK);
  EXPECT(close_rel(te, tm, 1e-12));

  surfimp_tolerances tol;
  surfimp_default_tolerances(&tol);
  EXPECT(tol.rel_tol == 1e-6);

  surfimp_sectors flux, flux_lif;
  double err = -1;
  EXPECT(surfimp_heat_transfer(al, al, 0.3e-4, 323.0, 300.0, SURFIMP_MODEL_IMPEDANCE, NULL, &flux, &err) ==
         SURFIMP_OK);
  EXPECT(surfimp_heat_transfer(al, al, 0.3e-4, 323.0, 300.0, SURFIMP_MODEL_LIFSHITZ_DIELECTRIC, &tol, &flux_lif,
                               NULL) == SURFIMP_OK);
  EXPECT(err >= 0.0);
  EXPECT(flux.te_ew > flux.tm_ew);
  {
    const double a = flux.te_pw + flux.te_ew + flux.tm_pw + flux.tm_ew;
    const double b = flux_lif.te_pw + flux_lif.te_ew + flux_lif.tm_pw + flux_lif.tm_ew;
    EXPECT(a > b && b > 0.0);
  }
  surfimp_sectors dens;
  EXPECT(surfimp_heat_spectral_density(al, al, 0.3e-4, 323.0, 300.0, SURFIMP_MODEL_IMPEDANCE, 1e13, NULL, &dens,
                                       NULL) == SURFIMP_OK);
  EXPECT(dens.te_ew > 0.0);
  EXPECT(surfimp_heat_transfer(al, al, -1.0, 323.0, 300.0, SURFIMP_MODEL_IMPEDANCE, NULL, &flux, NULL) ==
         SURFIMP_ERR_DOMAIN);
  EXPECT(surfimp_heat_transfer(al, al, 1e-4, 323.0, 300.0, (surfimp_model)7, NULL, &flux, NULL) ==
         SURFIMP_ERR_USAGE);

  double fte = 0, ftm = 0;
  EXPECT(surfimp_casimir_force(ideal, ideal, 1e-4, 0.0, SURFIMP_MODEL_IMPEDANCE, NULL, &fte, &ftm, NULL) ==
         SURFIMP_OK);
  EXPECT(close_rel(fte + ftm, surfimp_ideal_casimir_force(1e-4), 1e-6));

  double lte = 0, ltm = 0, dte = 0, dtm = 0;
  EXPECT(surfimp_casimir_spectral_density(al, al, 1e-4, 300.0, SURFIMP_MODEL_IMPEDANCE, 1e14, 0, NULL, &lte, &ltm,
                                          NULL) == SURFIMP_OK);
  EXPECT(surfimp_casimir_spectral_density(al, al, 1e-4, 300.0, SURFIMP_MODEL_IMPEDANCE, 1e14, 1, NULL, &dte, &dtm,
                                          NULL) == SURFIMP_OK);
  EXPECT(fabs(lte - dte) <= 1e-5 * (fabs(lte) + fabs(ltm)));

  double delta = 0;
  EXPECT(surfimp_thermal_te_correction(al, al, 1e-4, 300.0, SURFIMP_MODEL_LIFSHITZ_DIELECTRIC, NULL, &delta) ==
         SURFIMP_OK);
  EXPECT(delta < 0.0);

  surfimp_tolerances loose = tol;
  loose.rel_tol = 0.5;
  EXPECT(surfimp_casimir_force(al, al, 1e-4, 300.0, SURFIMP_MODEL_IMPEDANCE, &loose, &fte, &ftm, NULL) ==
         SURFIMP_ERR_USAGE);

  {
    const char* argv[] = {"casimir", "--gap", "0"};
    surfimp_run_config* cfg = NULL;
    EXPECT(surfimp_cli_parse(3, argv, &cfg) == SURFIMP_ERR_USAGE);
    EXPECT(cfg == NULL);
    EXPECT(surfimp_exit_code(SURFIMP_ERR_USAGE) == 2);
    EXPECT(surfimp_exit_code(SURFIMP_ERR_CONVERGENCE) == 3);
    EXPECT(surfimp_exit_code(SURFIMP_ERR_IO) == 4);
  }
  {
    const char* argv[] = {"--help"};
    surfimp_run_config* cfg = NULL;
    EXPECT(surfimp_cli_parse(1, argv, &cfg) == SURFIMP_HELP);
    EXPECT(strstr(surfimp_last_error(), "Usage") != NULL);
  }
  {
    const char* argv[] = {"casimir", "--gap", "1um", "--out", "/proc/surfimp-forbidden"};
    surfimp_run_config* cfg = NULL;
    int code = -1;
    EXPECT(surfimp_cli_parse(5, argv, &cfg) == SURFIMP_OK);
    EXPECT(surfimp_cli_run(cfg, 1, &code) == SURFIMP_OK);
    EXPECT(code == 4);
    EXPECT(strlen(surfimp_last_error()) > 0);
    surfimp_run_config_free(cfg);
  }

  surfimp_material_free(al);
  surfimp_material_free(ideal);
  surfimp_material_free(NULL);
  if (failures) {
    fprintf(stderr, "%d C API check(s) failed\n", failures);
    return 1;
  }
  printf("C API: all checks passed\n");
  return 0;
}
