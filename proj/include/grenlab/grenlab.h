/* grenlab - shape-constrained estimation and Monte Carlo rate experiments.
 *
 * C interface to the grenlab core: least concave majorants and their slope
 * (Grenander-type) estimators, naive cumulative estimators, kernel smoothing
 * with boundary correction, and a seeded experiment driver.
 *
 * All functions return a grenlab_status; on failure grenlab_last_error()
 * describes the problem (thread-local, valid until the next failing call on
 * the same thread). Objects returned through out-parameters are owned by the
 * caller and released with the matching *_free function. Handles are
 * immutable after creation and may be shared across threads.
 */
#ifndef GRENLAB_H
#define GRENLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GRENLAB_API __declspec(dllexport)
#else
#define GRENLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum grenlab_status {
    GRENLAB_OK = 0,
    GRENLAB_ERR_INVALID_INPUT = 1, /* malformed data or arguments */
    GRENLAB_ERR_DOMAIN = 2,        /* evaluation outside a domain */
    GRENLAB_ERR_MODEL = 3,         /* statistical model cannot be formed */
    GRENLAB_ERR_CONFIG = 4,        /* bad configuration or plan */
    GRENLAB_ERR_IO = 5,            /* filesystem failure */
    GRENLAB_ERR_FIT = 6,           /* rate fit impossible */
    GRENLAB_ERR_INTERNAL = 7
} grenlab_status;

GRENLAB_API const char* grenlab_version(void);
GRENLAB_API const char* grenlab_last_error(void);

/* ---- least concave majorants -------------------------------------- */

typedef struct grenlab_envelope grenlab_envelope;

/* Least concave majorant of points with strictly increasing x. */
GRENLAB_API grenlab_status grenlab_concave_majorant(const double* x, const double* y,
                                                    size_t n, grenlab_envelope** out);

/* Greatest convex minorant. */
GRENLAB_API grenlab_status grenlab_convex_minorant(const double* x, const double* y,
                                                   size_t n, grenlab_envelope** out);

GRENLAB_API void grenlab_envelope_free(grenlab_envelope* env);
GRENLAB_API size_t grenlab_envelope_vertex_count(const grenlab_envelope* env);
GRENLAB_API grenlab_status grenlab_envelope_vertex(const grenlab_envelope* env, size_t i,
                                                   double* x, double* y);
GRENLAB_API grenlab_status grenlab_envelope_value(const grenlab_envelope* env, double x,
                                                  double* out);
/* Left-hand slope; at the left endpoint the right limit. */
GRENLAB_API grenlab_status grenlab_envelope_left_slope(const grenlab_envelope* env,
                                                       double x, double* out);

/* ---- naive cumulative estimators ----------------------------------- */

typedef struct grenlab_step grenlab_step;

/* Empirical distribution function of samples within [lower, upper]. */
GRENLAB_API grenlab_status grenlab_step_empirical_cdf(const double* samples, size_t n,
                                                      double lower, double upper,
                                                      grenlab_step** out);

/* Cumulative sum process (1/n) sum y_i 1{t_i <= t} for a fixed design. */
GRENLAB_API grenlab_status grenlab_step_regression_cusum(const double* t, const double* y,
                                                         size_t n, double lower,
                                                         double upper, grenlab_step** out);

/* Nelson-Aalen cumulative hazard on [0, horizon]; uncensored[i] in {0,1}. */
GRENLAB_API grenlab_status grenlab_step_nelson_aalen(const double* times,
                                                     const int32_t* uncensored, size_t n,
                                                     double horizon, grenlab_step** out);

GRENLAB_API void grenlab_step_free(grenlab_step* step);
GRENLAB_API grenlab_status grenlab_step_value(const grenlab_step* step, double t,
                                              double* out);
/* Least concave majorant of the step over its whole domain. */
GRENLAB_API grenlab_status grenlab_step_majorant(const grenlab_step* step,
                                                 grenlab_envelope** out);
/* sup(envelope - step) with the attaining abscissa. */
GRENLAB_API grenlab_status grenlab_step_sup_gap(const grenlab_step* step,
                                                const grenlab_envelope* env, double* gap,
                                                double* location);

/* ---- monotone estimation ------------------------------------------- */

/* Weighted least-squares projection onto non-increasing sequences.
 * `weights` may be NULL for unit weights; `fitted` holds n values. */
GRENLAB_API grenlab_status grenlab_pava_decreasing(const double* values,
                                                   const double* weights, size_t n,
                                                   double* fitted);

typedef struct grenlab_monotone_fit grenlab_monotone_fit;

/* Slope decomposition of a concave envelope: the Grenander-type estimator. */
GRENLAB_API grenlab_status grenlab_grenander_fit(const grenlab_envelope* env,
                                                 grenlab_monotone_fit** out);
GRENLAB_API void grenlab_monotone_fit_free(grenlab_monotone_fit* fit);
GRENLAB_API grenlab_status grenlab_monotone_fit_value(const grenlab_monotone_fit* fit,
                                                      double t, double* out);

/* Kernel-smoothed fit (biweight kernel), locally linear on the boundary
 * strips [a, a+h) and (b-h, b]. order 0 = value, 1 = derivative. */
GRENLAB_API grenlab_status grenlab_monotone_fit_smoothed(const grenlab_monotone_fit* fit,
                                                         double h, double t, int order,
                                                         double* out);

/* ---- experiment driver ---------------------------------------------- */

/* Run the experiment described by a config file and write the results CSV
 * (`model,statistic,n,rep,value`). seed_override replaces the config seed
 * when has_seed_override is nonzero. threads <= 1 runs serially; results are
 * identical for any thread count. */
GRENLAB_API grenlab_status grenlab_run_config(const char* config_path,
                                              const char* output_path,
                                              int has_seed_override,
                                              uint64_t seed_override, int threads);

/* Fit log-log rates per (model, statistic) group of a results CSV and write
 * the report CSV. regressor is "lognlogn" (log((log n)/n)) or "logn". */
GRENLAB_API grenlab_status grenlab_report(const char* results_path, const char* regressor,
                                          const char* output_path);

#ifdef __cplusplus
}
#endif

#endif /* GRENLAB_H */
