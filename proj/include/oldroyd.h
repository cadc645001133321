/*
 * C API of the Oldroyd-B decay laboratory.
 *
 * All functions return ODB_OK (0) on success or a nonzero error code; the
 * message for the most recent failure on the calling thread is available
 * through odb_last_error(). Handles are opaque and freed with their
 * matching *_free function.
 *
 * Results come back as odb_report handles carrying a JSON summary (fits,
 * scalars, warnings) and an overall pass flag; batch runs additionally
 * write CSV/JSON artifacts under out_dir when it is non-NULL.
 */
#ifndef OLDROYD_H
#define OLDROYD_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define ODB_OK 0
#define ODB_ERR_INVALID 1 /* bad arguments, unknown keys, precondition failures */
#define ODB_ERR_RUNTIME 2 /* numerical failure (NaN/Inf, non-convergence) */
#define ODB_ERR_IO 3      /* file system failures */

typedef struct odb_scenario odb_scenario;
typedef struct odb_report odb_report;

/* Message for the calling thread's most recent error; never NULL. */
const char* odb_last_error(void);

/* ------------------------------------------------------------------ */
/* Scenario configuration (flat key = value; see README for the keys). */
/* ------------------------------------------------------------------ */

odb_scenario* odb_scenario_create(void);
odb_scenario* odb_scenario_load(const char* path);
int odb_scenario_set(odb_scenario* s, const char* key, const char* value);
int odb_scenario_get(const odb_scenario* s, const char* key, char* buf,
                     size_t bufsize);
void odb_scenario_free(odb_scenario* s);

/* ------------------------------------------------------------------ */
/* Batch runs.                                                         */
/* ------------------------------------------------------------------ */

/* Integrates one scenario and fits the monitored decay series.
 * with_remainder != 0 also runs the nonlinear-remainder comparison against
 * the exact linear propagator (requires model.a = 0). */
int odb_run_sim(const odb_scenario* s, int with_remainder, const char* out_dir,
                odb_report** out);

/* Integrability of ||grad(u, tau)||_inf along the run. */
int odb_run_integrability(const odb_scenario* s, const char* out_dir,
                          odb_report** out);

/* Vanishing-damping sweep over sweep.a_grid / sweep.alphas. */
int odb_run_damping_sweep(const odb_scenario* s, const char* out_dir,
                          odb_report** out);

/* ------------------------------------------------------------------ */
/* Exact linear-system oracle (R^2 statements, no grid).               */
/* ------------------------------------------------------------------ */

int odb_oracle_decay(double beta, double s1, double t_min, double t_max,
                     int n_samples, double slope_tol, const char* out_dir,
                     odb_report** out);
int odb_oracle_trtau(double beta, double a, double t_min, double t_max,
                     int n_samples, double slope_tol, const char* out_dir,
                     odb_report** out);
/* a_grid is a comma-separated list, e.g. "1e-4,1e-3,1e-2,1e-1". */
int odb_oracle_envelope(double beta, const char* a_grid, double ratio_tol,
                        double fit_tol, const char* out_dir, odb_report** out);
int odb_oracle_convcheck(double s1, double s2, double t_max, double tail_tol,
                         const char* out_dir, odb_report** out);
/* Exact linear evolution of the scenario's initial data to time t. */
int odb_oracle_propagate(const odb_scenario* s, double t, int n_samples,
                         const char* out_dir, odb_report** out);

/* ------------------------------------------------------------------ */
/* Offline regression and invariants.                                  */
/* ------------------------------------------------------------------ */

/* Fits column `column` of a CSV written by this library over
 * [t_min, t_max] against `target`; mode is one of "two_sided", "at_most",
 * "at_least", "report". */
int odb_fit_csv(const char* csv_path, const char* column, double t_min,
                double t_max, double target, double tolerance, const char* mode,
                odb_report** out);

/* Seeded random-instance property battery (`instances` draws per property). */
int odb_check_invariants(int instances, unsigned long long seed,
                         odb_report** out);

/* ------------------------------------------------------------------ */
/* Reports.                                                            */
/* ------------------------------------------------------------------ */

int odb_report_pass(const odb_report* r);
const char* odb_report_json(const odb_report* r);
void odb_report_free(odb_report* r);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* OLDROYD_H */
