#include "gbe/gbe.h"

#include <cmath>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "gbe/duality.hpp"
#include "gbe/ensemble.hpp"
#include "gbe/error.hpp"
#include "gbe/hyper.hpp"
#include "gbe/jack.hpp"
#include "gbe/limitfns.hpp"
#include "gbe/parallel.hpp"
#include "gbe/verify.hpp"

struct gbe_jack {
  gbe::SymmetricPolynomial poly;
  std::vector<std::string> labels;
  std::vector<gbe::cplx> coefs;
};

struct gbe_ensemble {
  gbe::EnsembleSpec spec;
};

struct gbe_study {
  gbe::StudyRequest req;
};

struct gbe_table {
  gbe::StudyTable table;
  std::string csv;
};

namespace {

using gbe::cplx;

thread_local std::string g_last_error;

gbe_status fail(gbe_status st, const char* msg) {
  g_last_error = msg;
  return st;
}

template <class F>
gbe_status guarded(F&& fn) {
  try {
    g_last_error.clear();
    fn();
    return GBE_OK;
  } catch (const gbe::DomainError& e) {
    return fail(GBE_ERR_DOMAIN, e.what());
  } catch (const gbe::ConvergenceError& e) {
    return fail(GBE_ERR_CONVERGENCE, e.what());
  } catch (const gbe::NotImplementedError& e) {
    return fail(GBE_ERR_NOT_IMPLEMENTED, e.what());
  } catch (const gbe::PositivityError& e) {
    return fail(GBE_ERR_POSITIVITY, e.what());
  } catch (const std::bad_alloc&) {
    return fail(GBE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GBE_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GBE_ERR_INTERNAL, "unknown failure");
  }
}

template <class... P>
bool any_null(P*... p) {
  return ((p == nullptr) || ...);
}

std::vector<cplx> cvec(const gbe_cplx* p, int n) {
  if (n < 0) throw gbe::DomainError("negative length");
  if (n > 0 && !p) throw gbe::DomainError("missing array");
  std::vector<cplx> v(n);
  for (int i = 0; i < n; ++i) v[i] = {p[i].re, p[i].im};
  return v;
}

gbe_cplx to_c(cplx z) { return {z.real(), z.imag()}; }
gbe_logc to_c(const gbe::LogComplex& z) { return {z.log_mag, z.phase}; }

gbe::SeriesControl to_ctrl(const gbe_series_ctrl* c) {
  gbe::SeriesControl out;
  if (c) out = {c->max_degree, c->rel_tol, c->stagnation_window};
  out.validate();
  return out;
}

gbe::ContourSpec to_contour(const gbe_contour* c) {
  gbe::ContourSpec out;
  if (c) out = {c->shift, c->nodes, c->half_width, c->auto_shift != 0};
  out.validate();
  return out;
}

void fill(gbe_quad_report* r, const gbe::QuadratureReport& q) {
  if (r) *r = {q.shift, q.center, q.half_width, q.nodes, q.change, q.lost_digits, q.real_line_chamber ? 1 : 0};
}

template <class C>
auto list_of(C& c, const std::string& key) -> decltype(&c.sbar) {
  if (key == "sbar") return &c.sbar;
  if (key == "pibar") return &c.pibar;
  if (key == "pi_fixed") return &c.pi_fixed;
  if (key == "sbar_prime") return &c.sbar_prime;
  return nullptr;
}

}  // namespace

extern "C" {

const char* gbe_version(void) { return "1.0.0"; }

const char* gbe_status_name(gbe_status status) {
  switch (status) {
    case GBE_OK: return "ok";
    case GBE_ERR_DOMAIN: return "domain";
    case GBE_ERR_CONVERGENCE: return "convergence";
    case GBE_ERR_NOT_IMPLEMENTED: return "not_implemented";
    case GBE_ERR_POSITIVITY: return "positivity";
    case GBE_ERR_INTERNAL: return "internal";
    case GBE_ERR_NULL_ARGUMENT: return "null_argument";
    case GBE_ERR_OUT_OF_RANGE: return "out_of_range";
  }
  return "unknown";
}

const char* gbe_last_error(void) { return g_last_error.c_str(); }

gbe_status gbe_set_threads(int k) {
  if (k < 0) return fail(GBE_ERR_DOMAIN, "thread count must be non-negative");
  return guarded([&] { gbe::set_thread_count(k); });
}

gbe_series_ctrl gbe_series_ctrl_default(void) {
  gbe::SeriesControl c;
  return {c.max_degree, c.rel_tol, c.stagnation_window};
}

gbe_status gbe_jack_new(const int* parts, int len, double alpha, int nvars, gbe_jack** out) {
  if (!out || (len > 0 && !parts)) return fail(GBE_ERR_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    if (len < 0) throw gbe::DomainError("negative partition length");
    if (!(alpha > 0)) throw gbe::DomainError("alpha must be positive");
    gbe::Partition kappa(std::vector<int>(parts, parts + len));
    auto* j = new gbe_jack{gbe::jack_in_monomial(kappa, alpha, nvars), {}, {}};
    for (auto it = j->poly.coeffs().rbegin(); it != j->poly.coeffs().rend(); ++it) {
      j->labels.push_back(it->first.str());
      j->coefs.push_back(it->second);
    }
    *out = j;
  });
}

void gbe_jack_free(gbe_jack* jack) { delete jack; }

size_t gbe_jack_size(const gbe_jack* jack) { return jack ? jack->labels.size() : 0; }

gbe_status gbe_jack_term(const gbe_jack* jack, size_t i, const char** label, gbe_cplx* coef) {
  if (any_null(jack, label, coef)) return fail(GBE_ERR_NULL_ARGUMENT, "null argument");
  if (i >= jack->labels.size()) return fail(GBE_ERR_OUT_OF_RANGE, "term index out of range");
  *label = jack->labels[i].c_str();
  *coef = to_c(jack->coefs[i]);
  return GBE_OK;
}

gbe_status gbe_jack_eval(const gbe_jack* jack, const gbe_cplx* x, int n, gbe_cplx* out) {
  if (any_null(jack, out)) return fail(GBE_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    if (n != jack->poly.nvars()) throw gbe::DomainError("point dimension must equal nvars");
    *out = to_c(gbe::evaluate(jack->poly, cvec(x, n)));
  });
}

gbe_status gbe_hyper_pq(const gbe_cplx* a, int p, const gbe_cplx* b, int q, const gbe_cplx* x, const gbe_cplx* y,
                        int n, double alpha, const gbe_series_ctrl* ctrl, gbe_cplx* value,
                        gbe_series_report* report) {
  if (!value) return fail(GBE_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    auto av = cvec(a, p), bv = cvec(b, q), xv = cvec(x, n);
    auto c = to_ctrl(ctrl);
    gbe::SeriesValue r = y ? gbe::hyper_pq_two_set(av, bv, xv, cvec(y, n), alpha, c)
                           : gbe::hyper_pq(av, bv, xv, alpha, c);
    *value = to_c(r.value);
    if (report)
      *report = {r.report.degree_reached, r.report.tail_estimate, r.report.cancellation, r.report.converged ? 1 : 0};
  });
}

gbe_status gbe_ensemble_new(double beta, int N, const double* source, int r, gbe_ensemble** out) {
  if (!out || (r > 0 && !source)) return fail(GBE_ERR_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    if (r < 0) throw gbe::DomainError("negative rank");
    gbe::EnsembleSpec spec{beta, N, std::vector<double>(source, source + r)};
    spec.validate();
    *out = new gbe_ensemble{spec};
  });
}

void gbe_ensemble_free(gbe_ensemble* ens) { delete ens; }

gbe_status gbe_log_density(const gbe_ensemble* ens, const double* x, double* out) {
  if (any_null(ens, x, out)) return fail(GBE_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    *out = gbe::log_density(ens->spec, std::span<const double>(x, static_cast<size_t>(ens->spec.N)));
  });
}

gbe_status gbe_direct_K(const gbe_ensemble* ens, const gbe_cplx* s, int n, int resolution, gbe_cplx* out) {
  if (any_null(ens, out)) return fail(GBE_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] { *out = to_c(gbe::direct_K(ens->spec, cvec(s, n), resolution)); });
}

gbe_mc_config gbe_mc_config_default(void) {
  gbe::McConfig c;
  return {c.seed, c.chain_length, c.burn_in, c.proposal_scale, c.batches, c.chains};
}

gbe_status gbe_mc_estimate_K(const gbe_ensemble* ens, const gbe_cplx* s, int n, const gbe_mc_config* cfg,
                             gbe_mc_result* out) {
  if (any_null(ens, cfg, out)) return fail(GBE_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    gbe::McConfig c{cfg->seed, cfg->chain_length, cfg->burn_in, cfg->proposal_scale, cfg->batches, cfg->chains};
    gbe::McResult r = gbe::mc_estimate_K(ens->spec, cvec(s, n), c);
    *out = {to_c(r.estimate), r.std_error, r.acceptance_rate, r.proposal_scale};
  });
}

gbe_contour gbe_contour_default(void) {
  gbe::ContourSpec c;
  return {c.shift, c.nodes, c.half_width, c.auto_shift ? 1 : 0};
}

gbe_status gbe_K_via_duality(const gbe_ensemble* ens, const gbe_cplx* s, int n, const gbe_contour* contour,
                             gbe_logc* out, gbe_quad_report* report) {
  if (any_null(ens, out)) return fail(GBE_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    gbe::QuadratureReport q;
    *out = to_c(gbe::K_via_duality(ens->spec, cvec(s, n), to_contour(contour), {}, &q));
    fill(report, q);
  });
}

gbe_status gbe_phi(const gbe_ensemble* ens, const gbe_cplx* s, int n, int l, const gbe_contour* contour,
                   gbe_logc* out, gbe_quad_report* report) {
  if (any_null(ens, out)) return fail(GBE_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    gbe::QuadratureReport q;
    *out = to_c(gbe::phi(ens->spec, cvec(s, n), l, to_contour(contour), {}, &q));
    fill(report, q);
  });
}

gbe_status gbe_limit(gbe_limit_fn fn, gbe_limit_path path, const gbe_cplx* s, int n, const gbe_cplx* f, int m,
                     double alpha, double delta, gbe_cplx* out, gbe_quad_report* report) {
  if (!out) return fail(GBE_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    auto sv = cvec(s, n), fv = cvec(f, m);
    if (!(alpha > 0)) throw gbe::DomainError("alpha must be positive");
    if (delta < 0 || !std::isfinite(delta)) throw gbe::DomainError("delta must be finite and non-negative");
    const bool det_ok = path == GBE_PATH_DET && alpha == 1.0;
    if (path == GBE_PATH_DET && !det_ok) throw gbe::DomainError("determinant path needs alpha = 1");
    gbe::QuadratureReport q;
    cplx v;
    if (fn == GBE_LIMIT_AIRY) {
      if (path == GBE_PATH_QUAD) {
        gbe::AiryArgs args{sv, fv, alpha, {}};
        if (delta > 0) args.contour = {delta, 0, 0.0, false};
        v = gbe::airy_mv(args, {}, &q);
      } else if (path == GBE_PATH_DET) {
        v = gbe::airy_mv_det_alpha1(sv, fv);
      } else {
        throw gbe::DomainError("Airy functions take the quad or det path");
      }
    } else if (fn == GBE_LIMIT_GAUSS) {
      if (delta != 0) throw gbe::DomainError("delta applies to the Airy contour only");
      switch (path) {
        case GBE_PATH_QUAD: v = gbe::gauss_mv(sv, fv, alpha, 0, {}, &q); break;
        case GBE_PATH_DET: v = gbe::gauss_mv_det_alpha1(sv, fv); break;
        case GBE_PATH_HERMITE: {
          if (m != 1) throw gbe::DomainError("Hermite path needs m = 1");
          const double a = std::sqrt(2.0 / alpha);
          for (auto& t : sv) t /= a;
          v = gbe::gauss_mv_m1_hermite(sv, fv[0] / a, alpha);
          break;
        }
        case GBE_PATH_SERIES: v = gbe::gauss_mv_series(sv, fv, alpha); break;
        default: throw gbe::DomainError("unknown path");
      }
    } else {
      throw gbe::DomainError("unknown limit function");
    }
    *out = to_c(v);
    fill(report, q);
  });
}

gbe_status gbe_study_new(const char* theorem, gbe_study** out) {
  if (any_null(theorem, out)) return fail(GBE_ERR_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new gbe_study{gbe::default_request(theorem)}; });
}

void gbe_study_free(gbe_study* study) { delete study; }

gbe_status gbe_study_set_regime(gbe_study* study, const char* regime) {
  if (any_null(study, regime)) return fail(GBE_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] { study->req.cfg.regime = gbe::parse_regime(regime); });
}

gbe_status gbe_study_get_regime(const gbe_study* study, const char** regime) {
  if (any_null(study, regime)) return fail(GBE_ERR_NULL_ARGUMENT, "null argument");
  *regime = gbe::regime_name(study->req.cfg.regime);
  return GBE_OK;
}

gbe_status gbe_study_set_real(gbe_study* study, const char* key, double value) {
  if (any_null(study, key)) return fail(GBE_ERR_NULL_ARGUMENT, "null argument");
  const std::string k = key;
  auto& q = study->req;
  if (k == "beta") q.cfg.beta = value;
  else if (k == "mu") q.cfg.mu = value;
  else if (k == "u") q.cfg.u = value;
  else if (k == "rank_exponent") q.rank_exponent = value;
  else if (k == "rank_scale") q.rank_scale = value;
  else return fail(GBE_ERR_DOMAIN, ("unknown real key '" + k + "'").c_str());
  return GBE_OK;
}

gbe_status gbe_study_get_real(const gbe_study* study, const char* key, double* value) {
  if (any_null(study, key, value)) return fail(GBE_ERR_NULL_ARGUMENT, "null argument");
  const std::string k = key;
  const auto& q = study->req;
  if (k == "beta") *value = q.cfg.beta;
  else if (k == "mu") *value = q.cfg.mu;
  else if (k == "u") *value = q.cfg.u;
  else if (k == "rank_exponent") *value = q.rank_exponent;
  else if (k == "rank_scale") *value = q.rank_scale;
  else if (k == "nu" || k == "sigma")
    return guarded([&] { *value = k == "nu" ? q.cfg.nu() : q.cfg.sigma(); });
  else return fail(GBE_ERR_DOMAIN, ("unknown real key '" + k + "'").c_str());
  return GBE_OK;
}

gbe_status gbe_study_set_int(gbe_study* study, const char* key, int value) {
  if (any_null(study, key)) return fail(GBE_ERR_NULL_ARGUMENT, "null argument");
  const std::string k = key;
  auto& c = study->req.cfg;
  if (k == "n") c.n = value;
  else if (k == "m") c.m = value;
  else if (k == "hat") c.hat = value != 0;
  else return fail(GBE_ERR_DOMAIN, ("unknown integer key '" + k + "'").c_str());
  return GBE_OK;
}

gbe_status gbe_study_get_int(const gbe_study* study, const char* key, int* value) {
  if (any_null(study, key, value)) return fail(GBE_ERR_NULL_ARGUMENT, "null argument");
  const std::string k = key;
  const auto& c = study->req.cfg;
  if (k == "n") *value = c.n;
  else if (k == "m") *value = c.m;
  else if (k == "r") *value = c.r();
  else if (k == "hat") *value = c.hat ? 1 : 0;
  else return fail(GBE_ERR_DOMAIN, ("unknown integer key '" + k + "'").c_str());
  return GBE_OK;
}

gbe_status gbe_study_set_list(gbe_study* study, const char* key, const double* values, int len) {
  if (!study || !key || (len > 0 && !values)) return fail(GBE_ERR_NULL_ARGUMENT, "null argument");
  if (len < 0) return fail(GBE_ERR_DOMAIN, "negative length");
  const std::string k = key;
  if (k == "N_list") {
    std::vector<int> ns;
    for (int i = 0; i < len; ++i) {
      if (!std::isfinite(values[i]) || values[i] < 1 || values[i] > 1e6 || values[i] != std::floor(values[i]))
        return fail(GBE_ERR_DOMAIN, "N_list entries must be positive integers");
      ns.push_back(static_cast<int>(values[i]));
    }
    study->req.cfg.N_list = ns;
    return GBE_OK;
  }
  std::vector<double>* dst = list_of(study->req.cfg, k);
  if (!dst) return fail(GBE_ERR_DOMAIN, ("unknown list key '" + k + "'").c_str());
  dst->assign(values, values + len);
  return GBE_OK;
}

gbe_status gbe_study_get_list(const gbe_study* study, const char* key, double* values, int cap, int* len) {
  if (any_null(study, key, len) || (cap > 0 && !values)) return fail(GBE_ERR_NULL_ARGUMENT, "null argument");
  const std::string k = key;
  std::vector<double> v;
  if (k == "N_list") {
    for (int N : study->req.cfg.N_list) v.push_back(N);
  } else {
    const std::vector<double>* src = list_of(study->req.cfg, k);
    if (!src) return fail(GBE_ERR_DOMAIN, ("unknown list key '" + k + "'").c_str());
    v = *src;
  }
  *len = static_cast<int>(v.size());
  for (int i = 0; i < cap && i < *len; ++i) values[i] = v[i];
  return GBE_OK;
}

gbe_status gbe_study_validate(const gbe_study* study) {
  if (!study) return fail(GBE_ERR_NULL_ARGUMENT, "null argument");
  return guarded([&] {
    study->req.cfg.validate();
    if (study->req.theorem == "rank") {
      if (study->req.cfg.pi_fixed.empty()) throw gbe::DomainError("growing rank needs a pi_fixed entry to replicate");
      if (!(study->req.rank_exponent >= 0) || !(study->req.rank_scale > 0))
        throw gbe::DomainError("growing rank needs rank_exponent >= 0 and rank_scale > 0");
    }
  });
}

gbe_status gbe_study_run(const gbe_study* study, gbe_table** out) {
  if (any_null(study, out)) return fail(GBE_ERR_NULL_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto* t = new gbe_table{gbe::run_request(study->req), {}};
    t->csv = t->table.to_csv();
    *out = t;
  });
}

void gbe_table_free(gbe_table* table) { delete table; }

size_t gbe_table_rows(const gbe_table* table) { return table ? table->table.rows.size() : 0; }

gbe_status gbe_table_row(const gbe_table* table, size_t i, gbe_study_row* out) {
  if (any_null(table, out)) return fail(GBE_ERR_NULL_ARGUMENT, "null argument");
  if (i >= table->table.rows.size()) return fail(GBE_ERR_OUT_OF_RANGE, "row index out of range");
  const auto& r = table->table.rows[i];
  *out = {r.N, r.r, to_c(r.lhs), to_c(r.rhs), r.rel_dev, r.rel_dev_flipped, r.quad_change};
  return GBE_OK;
}

const char* gbe_table_csv(const gbe_table* table) { return table ? table->csv.c_str() : ""; }

}  // extern "C"
