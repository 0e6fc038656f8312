#ifndef GBE_GBE_H
#define GBE_GBE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GBE_API __declspec(dllexport)
#else
#define GBE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gbe_status {
  GBE_OK = 0,
  GBE_ERR_DOMAIN = 1,
  GBE_ERR_CONVERGENCE = 2,
  GBE_ERR_NOT_IMPLEMENTED = 3,
  GBE_ERR_POSITIVITY = 4,
  GBE_ERR_INTERNAL = 5,
  GBE_ERR_NULL_ARGUMENT = 6,
  GBE_ERR_OUT_OF_RANGE = 7
} gbe_status;

typedef struct gbe_cplx {
  double re;
  double im;
} gbe_cplx;

/* z = exp(log_mag + i phase); zero is log_mag = -inf. */
typedef struct gbe_logc {
  double log_mag;
  double phase;
} gbe_logc;

GBE_API const char* gbe_version(void);
GBE_API const char* gbe_status_name(gbe_status status);
/* Message of the last failing call on this thread; "" if none. */
GBE_API const char* gbe_last_error(void);
GBE_API gbe_status gbe_set_threads(int k);

/* ---- series control ---- */

typedef struct gbe_series_ctrl {
  int max_degree;
  double rel_tol;
  int stagnation_window;
} gbe_series_ctrl;

typedef struct gbe_series_report {
  int degree_reached;
  double tail_estimate;
  double cancellation;
  int converged;
} gbe_series_report;

GBE_API gbe_series_ctrl gbe_series_ctrl_default(void);

/* ---- Jack polynomials ---- */

typedef struct gbe_jack gbe_jack;

GBE_API gbe_status gbe_jack_new(const int* parts, int len, double alpha, int nvars, gbe_jack** out);
GBE_API void gbe_jack_free(gbe_jack* jack);
GBE_API size_t gbe_jack_size(const gbe_jack* jack);
/* Terms run in descending lexicographic order of the monomial partition. The
   label ("(2,1)") stays owned by the handle. */
GBE_API gbe_status gbe_jack_term(const gbe_jack* jack, size_t i, const char** label, gbe_cplx* coef);
GBE_API gbe_status gbe_jack_eval(const gbe_jack* jack, const gbe_cplx* x, int n, gbe_cplx* out);

/* ---- hypergeometric functions of matrix argument ---- */

/* y may be NULL for the one-set function. ctrl may be NULL. */
GBE_API gbe_status gbe_hyper_pq(const gbe_cplx* a, int p, const gbe_cplx* b, int q, const gbe_cplx* x,
                                const gbe_cplx* y, int n, double alpha, const gbe_series_ctrl* ctrl,
                                gbe_cplx* value, gbe_series_report* report);

/* ---- ensemble and duality ---- */

typedef struct gbe_ensemble gbe_ensemble;

GBE_API gbe_status gbe_ensemble_new(double beta, int N, const double* source, int r, gbe_ensemble** out);
GBE_API void gbe_ensemble_free(gbe_ensemble* ens);
GBE_API gbe_status gbe_log_density(const gbe_ensemble* ens, const double* x, double* out);
/* N <= 3 only. resolution 0 picks the default. */
GBE_API gbe_status gbe_direct_K(const gbe_ensemble* ens, const gbe_cplx* s, int n, int resolution, gbe_cplx* out);

typedef struct gbe_mc_config {
  uint64_t seed;
  long chain_length;
  long burn_in;
  double proposal_scale;
  int batches;
  int chains;
} gbe_mc_config;

typedef struct gbe_mc_result {
  gbe_cplx estimate;
  double std_error;
  double acceptance_rate;
  double proposal_scale;
} gbe_mc_result;

GBE_API gbe_mc_config gbe_mc_config_default(void);
GBE_API gbe_status gbe_mc_estimate_K(const gbe_ensemble* ens, const gbe_cplx* s, int n, const gbe_mc_config* cfg,
                                     gbe_mc_result* out);

/* nodes = 0, half_width = 0 and auto_shift = 1 select automatic choices. */
typedef struct gbe_contour {
  double shift;
  int nodes;
  double half_width;
  int auto_shift;
} gbe_contour;

typedef struct gbe_quad_report {
  double shift;
  double center;
  double half_width;
  int nodes;
  double change;
  double lost_digits;
  int real_line_chamber;
} gbe_quad_report;

GBE_API gbe_contour gbe_contour_default(void);
/* contour and report may be NULL. */
GBE_API gbe_status gbe_K_via_duality(const gbe_ensemble* ens, const gbe_cplx* s, int n, const gbe_contour* contour,
                                     gbe_logc* out, gbe_quad_report* report);
GBE_API gbe_status gbe_phi(const gbe_ensemble* ens, const gbe_cplx* s, int n, int l, const gbe_contour* contour,
                           gbe_logc* out, gbe_quad_report* report);

/* ---- limit functions ---- */

typedef enum gbe_limit_fn { GBE_LIMIT_AIRY = 0, GBE_LIMIT_GAUSS = 1 } gbe_limit_fn;

typedef enum gbe_limit_path {
  GBE_PATH_QUAD = 0,
  GBE_PATH_DET = 1,
  GBE_PATH_HERMITE = 2,
  GBE_PATH_SERIES = 3
} gbe_limit_path;

/* delta > 0 fixes the Airy contour height, 0 picks it. report may be NULL
   and is only filled by the quadrature path. */
GBE_API gbe_status gbe_limit(gbe_limit_fn fn, gbe_limit_path path, const gbe_cplx* s, int n, const gbe_cplx* f,
                             int m, double alpha, double delta, gbe_cplx* out, gbe_quad_report* report);

/* ---- convergence studies ---- */

typedef struct gbe_study gbe_study;
typedef struct gbe_table gbe_table;

/* theorem: "sub", "crit", "sup", "bulk" or "rank"; starts from that theorem's
   default configuration. */
GBE_API gbe_status gbe_study_new(const char* theorem, gbe_study** out);
GBE_API void gbe_study_free(gbe_study* study);
/* regime: "subcritical", "critical", "supercritical", "bulk". */
GBE_API gbe_status gbe_study_set_regime(gbe_study* study, const char* regime);
GBE_API gbe_status gbe_study_get_regime(const gbe_study* study, const char** regime);
/* Real keys: beta, mu, u, rank_exponent, rank_scale. Integer keys: n, m, hat. */
GBE_API gbe_status gbe_study_set_real(gbe_study* study, const char* key, double value);
GBE_API gbe_status gbe_study_get_real(const gbe_study* study, const char* key, double* value);
GBE_API gbe_status gbe_study_set_int(gbe_study* study, const char* key, int value);
GBE_API gbe_status gbe_study_get_int(const gbe_study* study, const char* key, int* value);
/* List keys: sbar, pibar, pi_fixed, sbar_prime, N_list (values rounded). */
GBE_API gbe_status gbe_study_set_list(gbe_study* study, const char* key, const double* values, int len);
/* Writes up to cap entries; *len receives the full length. */
GBE_API gbe_status gbe_study_get_list(const gbe_study* study, const char* key, double* values, int cap, int* len);
GBE_API gbe_status gbe_study_validate(const gbe_study* study);
GBE_API gbe_status gbe_study_run(const gbe_study* study, gbe_table** out);

typedef struct gbe_study_row {
  int N;
  int r;
  gbe_logc lhs;
  gbe_logc rhs;
  double rel_dev;
  double rel_dev_flipped;
  double quad_change;
} gbe_study_row;

GBE_API void gbe_table_free(gbe_table* table);
GBE_API size_t gbe_table_rows(const gbe_table* table);
GBE_API gbe_status gbe_table_row(const gbe_table* table, size_t i, gbe_study_row* out);
/* CSV text owned by the table. */
GBE_API const char* gbe_table_csv(const gbe_table* table);

#ifdef __cplusplus
}
#endif

#endif
