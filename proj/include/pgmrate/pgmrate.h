/*
 * Copyright 2026 The pgmrate Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to pgmrate: worst-case rates and optimal steps of the proximal
 * gradient method under PL/RPL error bounds, certificate verification,
 * worst-case search, and step-size experiments.
 *
 * Every function returning int returns a pgmrate_status. On failure the
 * message is available from pgmrate_last_error() on the calling thread until
 * the next failing call on that thread. Handles are opaque; free them with
 * the matching *_free function (NULL is accepted).
 */

#ifndef PGMRATE_PGMRATE_H
#define PGMRATE_PGMRATE_H

#include <stddef.h>
#include <stdint.h>

#if defined(PGMRATE_BUILDING)
#define PGMRATE_API __attribute__((visibility("default")))
#else
#define PGMRATE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pgmrate_status {
  PGMRATE_OK = 0,
  PGMRATE_E_USAGE = 2,        /* bad argument: unknown name, NULL pointer */
  PGMRATE_E_DOMAIN = 3,       /* value outside its domain, e.g. gamma >= 2/L */
  PGMRATE_E_VERIFICATION = 4, /* certificate or search check failed */
  PGMRATE_E_IO = 5,
  PGMRATE_E_INTERNAL = 6
} pgmrate_status;

typedef enum pgmrate_fn_class { PGMRATE_CONVEX = 0, PGMRATE_NONCONVEX = 1 } pgmrate_fn_class;
typedef enum pgmrate_inequality { PGMRATE_PL = 0, PGMRATE_RPL = 1 } pgmrate_inequality;

PGMRATE_API const char* pgmrate_last_error(void);
PGMRATE_API const char* pgmrate_version(void);

/* Name parsing: "convex"/"nonconvex", "pl"/"rpl". */
PGMRATE_API int pgmrate_parse_fn_class(const char* name, int* out);
PGMRATE_API int pgmrate_parse_inequality(const char* name, int* out);

/* ---- rates -------------------------------------------------------------- */

/* Worst-case one-step rate. `branch` receives the piece label, e.g.
 * "convex-pl:1"; it may be NULL. */
PGMRATE_API int pgmrate_rate(int fn_class, int ineq, double L, double mu, double gamma,
                             double* rho, char* branch, size_t branch_cap);

PGMRATE_API int pgmrate_optimal_step(int fn_class, int ineq, double L, double mu,
                                     double* gamma, double* rho, char* branch,
                                     size_t branch_cap);

PGMRATE_API int pgmrate_baseline_garrigos(double L, double mu, double gamma, double* out);
PGMRATE_API int pgmrate_baseline_zhang(double L, double mu, double gamma, double* out);

/* CSV gamma,rate,branch,baseline_garrigos,baseline_zhang at the given steps. */
PGMRATE_API int pgmrate_rate_curve_csv(int fn_class, int ineq, double L, double mu,
                                       const double* gammas, size_t count, const char* path);

/* ---- certificates ------------------------------------------------------- */

PGMRATE_API size_t pgmrate_certificate_count(void);
PGMRATE_API int pgmrate_certificate_name(size_t index, char* buf, size_t cap);

/* Verifies `case_name` (or "all") on `grid`-point step grids spanning each
 * case interval and writes a JSON report. `cases_passed` receives the number
 * of passing cases. With `exact` nonzero every grid point is also checked in
 * rational arithmetic. Returns PGMRATE_E_VERIFICATION if any case fails; the
 * report is written either way. */
PGMRATE_API int pgmrate_certify(const char* case_name, double L, double mu, int grid,
                                int exact, unsigned threads, const char* report_path,
                                int* cases_passed);

/* ---- worst-case search -------------------------------------------------- */

typedef struct pgmrate_search_budget {
  int restarts;
  int max_outer;
  int max_inner;
  double feas_tol;
  uint64_t seed;
  unsigned threads;
} pgmrate_search_budget;

PGMRATE_API void pgmrate_search_budget_default(pgmrate_search_budget* budget);

/* `sound` is 1 when best_ratio <= analytic_rate + 1e-6. */
PGMRATE_API int pgmrate_pep_search(int fn_class, int ineq, double L, double mu, double gamma,
                                   const pgmrate_search_budget* budget, double* best_ratio,
                                   double* analytic_rate, int* sound);

/* CSV gamma,analytic_rate,searched_ratio,gap,restarts_used. Returns
 * PGMRATE_E_VERIFICATION (after writing the file) if any row is unsound. */
PGMRATE_API int pgmrate_tightness_csv(int fn_class, int ineq, double L, double mu,
                                      const double* gammas, size_t count,
                                      const pgmrate_search_budget* budget, const char* path,
                                      double* max_gap, int* all_sound);

/* ---- problems and solving ----------------------------------------------- */

typedef struct pgmrate_problem pgmrate_problem;
typedef struct pgmrate_trace pgmrate_trace;

typedef struct pgmrate_problem_spec {
  const char* kind;  /* "srlr", "lasso", "elastic_net" */
  int n;
  int d;
  double lambda;
  double delta;        /* elastic net only; NaN otherwise */
  uint64_t seed;
  const char* split;   /* "smooth" (default when NULL) or "prox" */
  double spectrum_min; /* target extreme eigenvalues of A^T A; NaN for none */
  double spectrum_max;
} pgmrate_problem_spec;

PGMRATE_API void pgmrate_problem_spec_default(pgmrate_problem_spec* spec);
PGMRATE_API int pgmrate_problem_generate(const pgmrate_problem_spec* spec,
                                         pgmrate_problem** out);
PGMRATE_API int pgmrate_problem_load(const char* path, pgmrate_problem** out);
PGMRATE_API int pgmrate_problem_save(const pgmrate_problem* problem, const char* path);
/* `mu` is NaN when the instance carries no error-bound constant. */
PGMRATE_API int pgmrate_problem_info(const pgmrate_problem* problem, double* L, double* mu,
                                     int* dim);
PGMRATE_API void pgmrate_problem_free(pgmrate_problem* problem);

/* Runs PGM from the origin. `step` is a policy: "c/L", "sqrt3/L", a positive
 * number, "optimal" or "rpl-interior". With `with_fstar` nonzero a reference
 * run estimates F_* so the trace carries gaps and contraction factors. */
PGMRATE_API int pgmrate_solve(const pgmrate_problem* problem, const char* step, int max_iters,
                              double stop_tol, int with_fstar, pgmrate_trace** out);
PGMRATE_API int pgmrate_trace_info(const pgmrate_trace* trace, double* gamma, int* iterations,
                                   int* converged, int* monotone, double* final_objective,
                                   double* final_residual);
/* CSV iter,F,gap,residual_norm,contraction. */
PGMRATE_API int pgmrate_trace_write_csv(const pgmrate_trace* trace, const char* path);
PGMRATE_API void pgmrate_trace_free(pgmrate_trace* trace);

/* ---- experiments -------------------------------------------------------- */

typedef struct pgmrate_experiment pgmrate_experiment;

typedef struct pgmrate_experiment_spec {
  const char* const* policies; /* step policies as accepted by pgmrate_solve */
  size_t policy_count;
  int max_iters;
  double stop_tol;
  double gap_tol;
  unsigned threads;
} pgmrate_experiment_spec;

typedef struct pgmrate_policy_summary {
  double gamma;
  int iterations_to_tol;      /* -1 when the gap tolerance was not reached */
  double max_contraction;     /* NaN when no factor is significant */
  double tail_geometric_mean; /* NaN when no factor is significant */
  double analytic_bound;      /* NaN when mu is unknown */
  int converged;
} pgmrate_policy_summary;

PGMRATE_API void pgmrate_experiment_spec_default(pgmrate_experiment_spec* spec);
PGMRATE_API int pgmrate_experiment_run(const pgmrate_problem* problem,
                                       const pgmrate_experiment_spec* spec,
                                       pgmrate_experiment** out);
PGMRATE_API int pgmrate_experiment_info(const pgmrate_experiment* exp, double* L, double* mu,
                                        double* fstar, size_t* policy_count);
PGMRATE_API int pgmrate_experiment_policy(const pgmrate_experiment* exp, size_t index,
                                          pgmrate_policy_summary* out);
/* Label of policy `index`, e.g. "1.9/L". */
PGMRATE_API int pgmrate_experiment_policy_label(const pgmrate_experiment* exp, size_t index,
                                                char* buf, size_t cap);
/* CSV policy,gamma,iterations_to_tol,max_contraction,analytic_bound. */
PGMRATE_API int pgmrate_experiment_write_summary(const pgmrate_experiment* exp,
                                                 const char* path);
PGMRATE_API int pgmrate_experiment_write_trace(const pgmrate_experiment* exp, size_t index,
                                               const char* path);
PGMRATE_API void pgmrate_experiment_free(pgmrate_experiment* exp);

#ifdef __cplusplus
}
#endif

#endif /* PGMRATE_PGMRATE_H */
