#include <math.h>
#include <stdio.h>
#include <string.h>

#include "gbe/gbe.h"

static int failures = 0;

#define EXPECT(cond)                                                  \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: expectation failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

static void jack(void) {
  int parts[1] = {2};
  gbe_jack* j = NULL;
  EXPECT(gbe_jack_new(parts, 1, 3.0, 2, &j) == GBE_OK);
  EXPECT(gbe_jack_size(j) == 2);
  const char* label = NULL;
  gbe_cplx c;
  EXPECT(gbe_jack_term(j, 0, &label, &c) == GBE_OK);
  EXPECT(strcmp(label, "(2)") == 0 && fabs(c.re - 1.0) < 1e-14);
  EXPECT(gbe_jack_term(j, 1, &label, &c) == GBE_OK);
  EXPECT(strcmp(label, "(1,1)") == 0 && fabs(c.re - 0.5) < 1e-14);
  EXPECT(gbe_jack_term(j, 2, &label, &c) == GBE_ERR_OUT_OF_RANGE);
  gbe_cplx x[2] = {{1.0, 0.0}, {2.0, 0.0}}, v;
  EXPECT(gbe_jack_eval(j, x, 2, &v) == GBE_OK);
  EXPECT(fabs(v.re - (1.0 + 4.0 + 0.5 * 2.0)) < 1e-13);
  EXPECT(gbe_jack_eval(j, x, 1, &v) == GBE_ERR_DOMAIN);
  EXPECT(strlen(gbe_last_error()) > 0);
  gbe_jack_free(j);

  int bad[2] = {1, 2};
  EXPECT(gbe_jack_new(bad, 2, 1.0, 2, &j) == GBE_ERR_DOMAIN);
  EXPECT(j == NULL);
  EXPECT(gbe_jack_new(parts, 1, 1.0, 2, NULL) == GBE_ERR_NULL_ARGUMENT);
}

static void hyper(void) {
  gbe_cplx a = {1.0, 0.0}, b = {2.0, 0.0};
  gbe_cplx x[1] = {{0.5, 0.0}}, v;
  gbe_series_report rep;
  EXPECT(gbe_hyper_pq(&a, 1, &b, 1, x, NULL, 1, 1.0, NULL, &v, &rep) == GBE_OK);
  EXPECT(fabs(v.re - 2.0 * (exp(0.5) - 1.0)) < 1e-12);
  EXPECT(rep.converged == 1);
  gbe_series_ctrl ctrl = gbe_series_ctrl_default();
  ctrl.max_degree = -1;
  EXPECT(gbe_hyper_pq(&a, 1, &b, 1, x, NULL, 1, 1.0, &ctrl, &v, &rep) == GBE_ERR_DOMAIN);
}

static void ensemble(void) {
  double f[1] = {0.7};
  gbe_ensemble* e = NULL;
  EXPECT(gbe_ensemble_new(2.0, 1, f, 1, &e) == GBE_OK);
  gbe_cplx s[1] = {{0.3, 0.0}}, k;
  EXPECT(gbe_direct_K(e, s, 1, 0, &k) == GBE_OK);
  EXPECT(fabs(k.re + 0.4) < 1e-12);
  gbe_logc z;
  gbe_quad_report rep;
  EXPECT(gbe_K_via_duality(e, s, 1, NULL, &z, &rep) == GBE_OK);
  EXPECT(fabs(exp(z.log_mag) * cos(z.phase) + 0.4) < 1e-10);
  EXPECT(rep.nodes > 0);
  double x[1] = {0.7}, ld;
  EXPECT(gbe_log_density(e, x, &ld) == GBE_OK);
  EXPECT(fabs(ld - 0.5 * log(1.0 / M_PI)) < 1e-12);
  gbe_mc_config mc = gbe_mc_config_default();
  mc.chain_length = 4000;
  mc.burn_in = 500;
  gbe_mc_result r1, r2;
  EXPECT(gbe_mc_estimate_K(e, s, 1, &mc, &r1) == GBE_OK);
  EXPECT(gbe_mc_estimate_K(e, s, 1, &mc, &r2) == GBE_OK);
  EXPECT(r1.estimate.re == r2.estimate.re && r1.std_error == r2.std_error);
  EXPECT(fabs(r1.estimate.re + 0.4) < 5 * r1.std_error);
  gbe_ensemble_free(e);

  EXPECT(gbe_ensemble_new(-1.0, 2, NULL, 0, &e) == GBE_ERR_DOMAIN);
  EXPECT(gbe_ensemble_new(2.0, 5, NULL, 0, &e) == GBE_OK);
  EXPECT(gbe_direct_K(e, s, 1, 0, &k) == GBE_ERR_DOMAIN);
  gbe_cplx s4[4] = {{0, 0}, {0.1, 0}, {0.2, 0}, {0.3, 0}};
  EXPECT(gbe_K_via_duality(e, s4, 4, NULL, &z, NULL) == GBE_ERR_NOT_IMPLEMENTED);
  EXPECT(gbe_phi(e, s, 1, 1, NULL, &z, NULL) == GBE_OK);
  gbe_ensemble_free(e);
}

static void limits(void) {
  gbe_cplx s[1] = {{0.0, 0.0}}, v;
  EXPECT(gbe_limit(GBE_LIMIT_AIRY, GBE_PATH_QUAD, s, 1, NULL, 0, 1.0, 0.0, &v, NULL) == GBE_OK);
  EXPECT(fabs(v.re - 0.355028053888) < 1e-8);
  EXPECT(gbe_limit(GBE_LIMIT_AIRY, GBE_PATH_DET, s, 1, NULL, 0, 1.0, 0.0, &v, NULL) == GBE_OK);
  EXPECT(fabs(v.re - 0.355028053888) < 1e-10);
  EXPECT(gbe_limit(GBE_LIMIT_AIRY, GBE_PATH_HERMITE, s, 1, NULL, 0, 1.0, 0.0, &v, NULL) == GBE_ERR_DOMAIN);
  gbe_cplx s2[2] = {{0.3, 0}, {0.7, 0}}, f[1] = {{0.2, 0}}, h, q;
  EXPECT(gbe_limit(GBE_LIMIT_GAUSS, GBE_PATH_HERMITE, s2, 2, f, 1, 2.0, 0.0, &h, NULL) == GBE_OK);
  EXPECT(gbe_limit(GBE_LIMIT_GAUSS, GBE_PATH_SERIES, s2, 2, f, 1, 2.0, 0.0, &q, NULL) == GBE_OK);
  EXPECT(fabs(h.re - q.re) < 1e-10);
  EXPECT(gbe_limit(GBE_LIMIT_GAUSS, GBE_PATH_DET, s2, 2, f, 1, 2.0, 0.0, &q, NULL) == GBE_ERR_DOMAIN);
}

static void study(void) {
  gbe_study* st = NULL;
  EXPECT(gbe_study_new("crit", &st) == GBE_OK);
  const char* regime = NULL;
  EXPECT(gbe_study_get_regime(st, &regime) == GBE_OK && strcmp(regime, "critical") == 0);
  double ns[2] = {16, 64};
  EXPECT(gbe_study_set_list(st, "N_list", ns, 2) == GBE_OK);
  double half = 0.5;
  EXPECT(gbe_study_set_list(st, "N_list", &half, 1) == GBE_ERR_DOMAIN);
  EXPECT(gbe_study_set_real(st, "nonsense", 1.0) == GBE_ERR_DOMAIN);
  int len = 0;
  double buf[4];
  EXPECT(gbe_study_get_list(st, "N_list", buf, 4, &len) == GBE_OK && len == 2 && buf[1] == 64);
  EXPECT(gbe_study_validate(st) == GBE_OK);
  gbe_table* t = NULL;
  EXPECT(gbe_study_run(st, &t) == GBE_OK);
  EXPECT(gbe_table_rows(t) == 2);
  gbe_study_row row;
  EXPECT(gbe_table_row(t, 1, &row) == GBE_OK);
  EXPECT(row.N == 64 && row.rel_dev < 0.01);
  EXPECT(strncmp(gbe_table_csv(t), "N,lhs_log_mag,lhs_phase,rhs_log_mag,rhs_phase,rel_dev\n16,", 57) == 0);
  EXPECT(gbe_table_row(t, 2, &row) == GBE_ERR_OUT_OF_RANGE);
  gbe_table_free(t);

  EXPECT(gbe_study_set_real(st, "mu", 2.5) == GBE_OK);
  EXPECT(gbe_study_validate(st) == GBE_ERR_DOMAIN);
  EXPECT(gbe_study_run(st, &t) == GBE_ERR_DOMAIN && t == NULL);
  gbe_study_free(st);
  EXPECT(gbe_study_new("nope", &st) == GBE_ERR_DOMAIN);
}

int main(void) {
  EXPECT(strcmp(gbe_status_name(GBE_ERR_CONVERGENCE), "convergence") == 0);
  EXPECT(gbe_set_threads(-1) == GBE_ERR_DOMAIN);
  EXPECT(gbe_set_threads(2) == GBE_OK);
  jack();
  hyper();
  ensemble();
  limits();
  study();
  EXPECT(gbe_set_threads(0) == GBE_OK);
  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  printf("capi: all checks passed\n");
  return 0;
}
