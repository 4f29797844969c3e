#include <stdio.h>

#include "surfimp/surfimp.h"

int main(int argc, char** argv) {
  surfimp_run_config* config = NULL;
  surfimp_status st = surfimp_cli_parse(argc - 1, (const char* const*)(argv + 1), &config);
  if (st == SURFIMP_HELP) {
    fputs(surfimp_last_error(), stdout);
    return 0;
  }
  if (st != SURFIMP_OK) {
    fprintf(stderr, "surfimp: %s error: %s\n", surfimp_status_name(st), surfimp_last_error());
    if (st == SURFIMP_ERR_USAGE) fputs("run 'surfimp --help' for usage\n", stderr);
    return surfimp_exit_code(st);
  }
  int code = 1;
  st = surfimp_cli_run(config, 0, &code);
  surfimp_run_config_free(config);
  if (st != SURFIMP_OK) {
    fprintf(stderr, "surfimp: %s\n", surfimp_last_error());
    return surfimp_exit_code(st);
  }
  return code;
}
