/* C interface to the hazard-monotonicity test library.
 *
 * All entry points return a status code; rich results come back through
 * opaque handles with accessor functions.  On failure the thread-local
 * message from hazmon_last_error() describes what went wrong.  Strings
 * returned through char** are heap-allocated; release them with
 * hazmon_free_string().
 */
#ifndef HAZMON_H
#define HAZMON_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HAZMON_API __declspec(dllexport)
#else
#define HAZMON_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hazmon_status {
  HAZMON_OK = 0,
  HAZMON_ERR_INVALID_ARGUMENT = 1,
  HAZMON_ERR_DEGENERATE_INTERVAL = 2,
  HAZMON_ERR_DEGENERATE_FIT = 3,
  HAZMON_ERR_CONFIG = 4,
  HAZMON_ERR_INTERNAL = 5
} hazmon_status;

typedef enum hazmon_method {
  HAZMON_METHOD_TN_SMOOTHED = 0,
  HAZMON_METHOD_TN_NAIVE = 1,
  HAZMON_METHOD_DUROT_SUP = 2,
  HAZMON_METHOD_DUROT_TN = 3
} hazmon_method;

typedef struct hazmon_outcome hazmon_outcome;
typedef struct hazmon_model hazmon_model;
typedef struct hazmon_table hazmon_table;

HAZMON_API const char* hazmon_version(void);
HAZMON_API const char* hazmon_last_error(void);
HAZMON_API void hazmon_free_string(char* s);

/* ---- monotonicity test ------------------------------------------------ */

typedef struct hazmon_test_config {
  int32_t method;      /* hazmon_method */
  int32_t bootstrap_b; /* number of bootstrap replicates */
  double alpha;
  double bandwidth; /* <= 0: default n^(-1/4) */
  double penalty;   /* <  0: default 2*n^(-2/3) */
  double power_p;   /* >= 1; INFINITY selects the max form */
  uint64_t seed;
  int32_t threads;          /* 0: HAZMON_THREADS env var, else hardware */
  int32_t reflect_boundary; /* nonzero: reflect the step hazard at 0 */
} hazmon_test_config;

HAZMON_API void hazmon_test_config_init(hazmon_test_config* cfg);

/* Test for a nondecreasing hazard on [0, interval_hi].  Ties in the data
 * are broken deterministically (i * 1e-9 * scale); the count is reported on
 * the outcome. */
HAZMON_API hazmon_status hazmon_run_test(const double* data, size_t n,
                                         double interval_hi,
                                         const hazmon_test_config* cfg,
                                         hazmon_outcome** out);

HAZMON_API double hazmon_outcome_statistic(const hazmon_outcome* o);
HAZMON_API double hazmon_outcome_critical_value(const hazmon_outcome* o);
HAZMON_API double hazmon_outcome_p_value(const hazmon_outcome* o);
HAZMON_API int32_t hazmon_outcome_reject(const hazmon_outcome* o);
HAZMON_API int32_t hazmon_outcome_tie_adjustments(const hazmon_outcome* o);
HAZMON_API size_t hazmon_outcome_replicate_count(const hazmon_outcome* o);
HAZMON_API hazmon_status hazmon_outcome_replicates(const hazmon_outcome* o,
                                                   double* buf, size_t len);
HAZMON_API hazmon_status hazmon_outcome_json(const hazmon_outcome* o,
                                             char** out);
HAZMON_API void hazmon_outcome_free(hazmon_outcome* o);

/* ---- raw statistics ---------------------------------------------------- */

HAZMON_API hazmon_status hazmon_statistic_tn(const double* data, size_t n,
                                             double lo, double hi, double p,
                                             double* out);
HAZMON_API hazmon_status hazmon_statistic_durot(const double* data, size_t n,
                                                double hi, double* out);

/* Order statistic x_(ceil(q*n)) of the data. */
HAZMON_API hazmon_status hazmon_empirical_quantile(const double* data,
                                                   size_t n, double q,
                                                   double* out);

/* ---- hazard models ----------------------------------------------------- */

HAZMON_API hazmon_status hazmon_model_d_family(double d, hazmon_model** out);
HAZMON_API hazmon_status hazmon_model_bump_family(double beta, double gamma,
                                                  double mu, double sigma,
                                                  hazmon_model** out);
HAZMON_API hazmon_status hazmon_model_constant(double level,
                                               hazmon_model** out);
HAZMON_API hazmon_status hazmon_model_hazard(const hazmon_model* m, double x,
                                             double* out);
HAZMON_API hazmon_status hazmon_model_hazard_deriv(const hazmon_model* m,
                                                   double x, double* out);
HAZMON_API hazmon_status hazmon_model_cumhaz(const hazmon_model* m, double x,
                                             double* out);
HAZMON_API hazmon_status hazmon_model_cdf(const hazmon_model* m, double x,
                                          double* out);
HAZMON_API hazmon_status hazmon_model_quantile(const hazmon_model* m, double q,
                                               double* out);
/* Decreasing-hazard interval of the d-family; degenerates to the single
 * stationary point 3/4 when d = 0.  *exists is 0 when the hazard is
 * strictly increasing (d > 0) or the model is not a d-family model. */
HAZMON_API hazmon_status hazmon_model_stationary_interval(
    const hazmon_model* m, double* lo, double* hi, int32_t* exists);
HAZMON_API hazmon_status hazmon_model_sample(const hazmon_model* m, size_t n,
                                             uint64_t seed, double* out);
HAZMON_API void hazmon_model_free(hazmon_model* m);

/* ---- power studies ------------------------------------------------------ */

/* Run the study described by a flat key=value configuration text. */
HAZMON_API hazmon_status hazmon_study_run(const char* config_text,
                                          hazmon_table** out);
HAZMON_API hazmon_status hazmon_table_csv(const hazmon_table* t, char** out);
HAZMON_API hazmon_status hazmon_table_json(const hazmon_table* t, char** out);
HAZMON_API hazmon_status hazmon_table_plot_csv(const hazmon_table* t,
                                               char** out);
HAZMON_API void hazmon_table_free(hazmon_table* t);

#ifdef __cplusplus
}
#endif

#endif /* HAZMON_H */
