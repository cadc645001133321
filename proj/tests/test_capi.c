/* C-linkage tests for the shared library API: this file is compiled as C,
 * which also proves the public header is C-clean. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "oldroyd.h"

static int failures = 0;

#define CHECK(cond, msg)                                         \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "[FAIL] %s:%d: %s\n", __FILE__, __LINE__, msg); \
      ++failures;                                                \
    }                                                            \
  } while (0)

static void test_scenario_roundtrip(void) {
  odb_scenario* s = odb_scenario_create();
  char buf[64];
  CHECK(s != NULL, "scenario_create");
  CHECK(odb_scenario_set(s, "grid.n", "32") == ODB_OK, "set grid.n");
  CHECK(odb_scenario_set(s, "model.beta", "0.6") == ODB_OK, "set beta");
  CHECK(odb_scenario_get(s, "grid.n", buf, sizeof buf) == ODB_OK, "get grid.n");
  CHECK(strcmp(buf, "32") == 0, "grid.n value");
  CHECK(odb_scenario_set(s, "bogus.key", "1") == ODB_ERR_INVALID, "unknown key");
  CHECK(strlen(odb_last_error()) > 0, "error message populated");
  odb_scenario_free(s);
}

static void test_scenario_file(void) {
  const char* path = "capi_scenario.cfg";
  FILE* f = fopen(path, "w");
  CHECK(f != NULL, "open config for writing");
  if (!f) return;
  fprintf(f, "# tiny linear run\n");
  fprintf(f, "grid.n = 32\n");
  fprintf(f, "grid.l = 50.265482457436690\n");
  fprintf(f, "model.beta = 0.75\n");
  fprintf(f, "init.epsilon = 1e-3\n");
  fprintf(f, "stepper.t_end = 3\n");
  fprintf(f, "stepper.dt = 0.1\n");
  fprintf(f, "stepper.linear_only = 1\n");
  fprintf(f, "output.sample_dt = 0.25\n");
  fprintf(f, "fit.t_min = 0.5\n");
  fprintf(f, "fit.tolerance = 10\n");
  fclose(f);

  odb_scenario* s = odb_scenario_load(path);
  CHECK(s != NULL, "scenario_load");
  if (!s) return;

  odb_report* rep = NULL;
  CHECK(odb_run_sim(s, 0, NULL, &rep) == ODB_OK, "run_sim");
  CHECK(rep != NULL, "report handle");
  if (rep) {
    const char* json = odb_report_json(rep);
    CHECK(json && strstr(json, "\"fits\"") != NULL, "report json has fits");
    odb_report_free(rep);
  }
  odb_scenario_free(s);
  remove(path);
}

static void test_bad_scenario_load(void) {
  odb_scenario* s = odb_scenario_load("/no/such/file.cfg");
  CHECK(s == NULL, "missing file yields NULL");
  CHECK(strlen(odb_last_error()) > 0, "error recorded");
}

static void test_oracle_endpoints(void) {
  odb_report* rep = NULL;
  CHECK(odb_oracle_decay(0.75, 0.0, 1e2, 1e4, 9, 0.01, NULL, &rep) == ODB_OK,
        "oracle decay");
  CHECK(rep && odb_report_pass(rep) == 1, "oracle decay passes the 1% gate");
  odb_report_free(rep);
  rep = NULL;

  CHECK(odb_oracle_envelope(0.75, "1e-3,1e-2,1e-1", 1e-6, 0.05, NULL, &rep) ==
            ODB_OK,
        "oracle envelope");
  CHECK(rep && odb_report_pass(rep) == 1, "envelope scaling holds");
  odb_report_free(rep);
  rep = NULL;

  CHECK(odb_oracle_convcheck(0.5, 1.5, 1e3, 0.10, NULL, &rep) == ODB_OK,
        "convcheck");
  CHECK(rep && odb_report_pass(rep) == 1, "convcheck bounded");
  odb_report_free(rep);
  rep = NULL;

  /* Invalid parameters propagate as error codes, not crashes. */
  CHECK(odb_oracle_convcheck(1.5, 0.5, 1e3, 0.10, NULL, &rep) != ODB_OK,
        "convcheck precondition");
}

static void test_fit_csv(void) {
  const char* path = "capi_fit.csv";
  FILE* f = fopen(path, "w");
  int i;
  CHECK(f != NULL, "open csv");
  if (!f) return;
  fprintf(f, "t,value\n");
  for (i = 0; i < 24; ++i) {
    const double t = 1.0 + 3.0 * i;
    fprintf(f, "%.17g,%.17g\n", t, 2.0 * pow(1.0 + t, -0.75));
  }
  fclose(f);

  odb_report* rep = NULL;
  CHECK(odb_fit_csv(path, "value", 1.0, 100.0, -0.75, 0.01, "two_sided", &rep) ==
            ODB_OK,
        "fit csv");
  CHECK(rep && odb_report_pass(rep) == 1, "fit matches target");
  odb_report_free(rep);
  rep = NULL;

  CHECK(odb_fit_csv(path, "nope", 1.0, 100.0, 0.0, 0.1, "report", &rep) ==
            ODB_ERR_INVALID,
        "unknown column rejected");
  remove(path);
}

static void test_invariants(void) {
  odb_report* rep = NULL;
  CHECK(odb_check_invariants(2, 42ull, &rep) == ODB_OK, "battery runs");
  CHECK(rep && odb_report_pass(rep) == 1, "battery passes");
  if (rep) {
    CHECK(strstr(odb_report_json(rep), "transform_round_trip") != NULL,
          "battery json lists properties");
    odb_report_free(rep);
  }
}

int main(void) {
  test_scenario_roundtrip();
  test_scenario_file();
  test_bad_scenario_load();
  test_oracle_endpoints();
  test_fit_csv();
  test_invariants();
  if (failures == 0) {
    printf("capi_tests: all checks passed\n");
    return 0;
  }
  fprintf(stderr, "capi_tests: %d failures\n", failures);
  return 1;
}
