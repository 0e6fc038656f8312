#include "gbe/verify.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "gbe/ensemble.hpp"
#include "gbe/error.hpp"
#include "gbe/hyper.hpp"
#include "gbe/limitfns.hpp"

namespace gbe {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

void check_finite(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw DomainError(std::string(what) + " must be finite");
}

double log_binom(int n, int k) { return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0); }

std::vector<double> sources_at(const RegimeConfig& cfg, int N) {
  std::vector<double> pi;
  pi.reserve(cfg.r());
  const double sq = std::sqrt(static_cast<double>(N));
  for (int k = 0; k < cfg.m; ++k) {
    if (cfg.regime == Regime::Critical)
      pi.push_back(1.0 + cfg.pibar[k] / std::cbrt(static_cast<double>(N)));
    else
      pi.push_back(cfg.nu() + cfg.sigma() * cfg.pibar[k] / sq);
  }
  for (double p : cfg.pi_fixed) pi.push_back(p);
  return pi;
}

std::vector<cplx> to_cplx(const std::vector<double>& v) { return {v.begin(), v.end()}; }

std::vector<double> sbar_prime_of(const RegimeConfig& cfg) {
  if (!cfg.sbar_prime.empty()) return cfg.sbar_prime;
  std::vector<double> sp = cfg.sbar;
  for (double& x : sp) x += 0.25;
  return sp;
}

LogComplex lc_real(double log_mag, bool negative = false) { return {log_mag, negative ? kPi : 0.0}; }

LogComplex pow_signed(double base, int power) {
  if (power == 0) return {0.0, 0.0};
  if (base == 0.0) return {};
  return {power * std::log(std::abs(base)), base < 0 && (power % 2) ? kPi : 0.0};
}

struct Evaluated {
  LogComplex value;
  double change = 0.0;
};

Evaluated eval_phi(const RegimeConfig& cfg, int N, const std::vector<double>& sbar, int l) {
  RegimeConfig c = cfg;
  c.sbar = sbar;
  ScaledArgs a = apply_scaling(c, N);
  EnsembleSpec spec{cfg.beta, N, a.f};
  QuadratureReport rep;
  Evaluated e;
  e.value = phi(spec, a.s, l, {}, {}, &rep);
  e.change = rep.change;
  return e;
}

double p2(const std::vector<double>& v) {
  double acc = 0;
  for (double x : v) acc += x * x;
  return acc;
}

double p1(const std::vector<double>& v) {
  double acc = 0;
  for (double x : v) acc += x;
  return acc;
}

// ₁F₁^{(β/2)}(a; b; z) for the bulk limit.
cplx bulk_1f1(double a, double b, const std::vector<cplx>& z, double alpha) {
  if (z.size() == 1) return kummer_m(a, b, z[0]);
  SeriesControl ctrl{120, 1e-14, 3};
  cplx av[1] = {a};
  cplx bv[1] = {b};
  SeriesValue v = hyper_pq(av, bv, z, alpha, ctrl);
  if (!v.report.converged) throw ConvergenceError("bulk 1F1 series did not converge");
  return v.value;
}

StudyRow make_row(int N, int r, const LogComplex& lhs, const LogComplex& rhs, double change) {
  StudyRow row;
  row.N = N;
  row.r = r;
  row.lhs = lhs;
  row.rhs = rhs;
  row.rel_dev = relative_deviation_or_inf(lhs, rhs);
  row.quad_change = change;
  return row;
}

void require_regime(const RegimeConfig& cfg, Regime want) {
  cfg.validate();
  if (cfg.regime != want) throw DomainError(std::string("config regime is ") + regime_name(cfg.regime) +
                                            ", study expects " + regime_name(want));
}

StudyRow soft_edge_row(const RegimeConfig& cfg, int N) {
  const int n = cfg.n;
  const std::vector<double> pi = sources_at(cfg, N);
  const int r = static_cast<int>(pi.size());
  Evaluated ph = eval_phi(cfg, N, cfg.sbar, 0);
  const double alpha = cfg.beta / 2.0;

  if (cfg.regime == Regime::Subcritical || cfg.regime == Regime::Critical) {
    LogComplex lhs = ph.value / constant_phi_crit(cfg.beta, N, n, cfg.m);
    LogComplex rhs(0.0, 0.0);
    for (double p : cfg.pi_fixed) rhs *= pow_signed(1.0 - p, n);
    AiryArgs aa;
    aa.s = to_cplx(cfg.sbar);
    aa.f = to_cplx(cfg.pibar);
    aa.alpha = alpha;
    rhs *= LogComplex::from_value(airy_mv(aa));
    return make_row(N, r, lhs, rhs, ph.change);
  }

  const double nu = cfg.nu(), sigma = cfg.sigma(), mu = cfg.mu;
  LogComplex rhs(0.0, 0.0);
  for (double p : cfg.pi_fixed) rhs *= pow_signed(nu - p, n);
  const std::vector<cplx> sb = to_cplx(cfg.sbar);
  const std::vector<cplx> pb = to_cplx(cfg.pibar);
  rhs *= LogComplex::from_value(gauss_mv(sb, pb, alpha));

  if (!cfg.hat) {
    LogComplex lhs = ph.value / constant_phi_sup(cfg.beta, N, n, cfg.m, r, mu, nu, sigma);
    lhs *= LogComplex((2 * nu - mu) * std::sqrt(static_cast<double>(N)) * p1(cfg.sbar) / (2 * sigma), 0.0);
    rhs *= LogComplex(p2(cfg.sbar) / (4 * sigma * sigma), 0.0);
    return make_row(N, r, lhs, rhs, ph.change);
  }

  // φ̂ = e^{(ν²-1)/(2(ν²+1)) p_2(s)} φ.
  ScaledArgs a = apply_scaling(cfg, N);
  double ps = 0;
  for (const cplx& x : a.s) ps += std::norm(x);
  LogComplex lhs = ph.value * LogComplex((nu * nu - 1) / (2 * (nu * nu + 1)) * ps, 0.0);
  const double lc = -n * N / 2.0 * kLn2 + (n * (1.0 + cfg.m) + 2.0 * n * (n - 1) / cfg.beta) * std::log(sigma) +
                    n * (N - r) * std::log(nu) + n * (N - cfg.m) / 2.0 * std::log(static_cast<double>(N)) -
                    n * N / 2.0;
  lhs /= LogComplex(lc, (n * cfg.m) % 2 ? kPi : 0.0);
  rhs *= LogComplex((nu * nu - 1) / (2 * (nu * nu + 1)) * p2(cfg.sbar), 0.0);
  return make_row(N, r, lhs, rhs, ph.change);
}

StudyRow bulk_row(const RegimeConfig& cfg, int N) {
  const int n = cfg.n;
  const double beta = cfg.beta, alpha = beta / 2.0;
  const std::vector<double> pi = cfg.pi_fixed;
  const int r = static_cast<int>(pi.size());
  double log_pref = 0;
  for (double p : pi) log_pref += std::log1p(p * p);

  auto f11 = [&](const std::vector<double>& sb, double sign, int m) {
    std::vector<cplx> z(sb.size());
    for (size_t j = 0; j < sb.size(); ++j) z[j] = cplx(0, sign * 2 * kPi * sb[j]);
    return LogComplex::from_value(bulk_1f1(2.0 * m / beta, 2.0 * n / beta, z, alpha));
  };

  if (n % 2 == 0) {
    const int m = n / 2;
    Evaluated ph = eval_phi(cfg, N, cfg.sbar, 0);
    LogComplex lhs = ph.value / constant_psi(beta, N, n, r, cfg.u, 0);
    LogComplex rhs = LogComplex(std::log(coeff_gamma_m(m, 4.0 / beta)) + m * log_pref, -kPi * p1(cfg.sbar));
    rhs *= f11(cfg.sbar, 1.0, m);
    return make_row(N, r, lhs, rhs, ph.change);
  }

  const int m = (n + 1) / 2;
  const std::vector<double> sp = sbar_prime_of(cfg);
  Evaluated a0 = eval_phi(cfg, N, cfg.sbar, 0);
  Evaluated a1 = eval_phi(cfg, N, sp, 1);
  Evaluated b0 = eval_phi(cfg, N, sp, 0);
  Evaluated b1 = eval_phi(cfg, N, cfg.sbar, 1);
  LogComplex lhs = a0.value * a1.value - b0.value * b1.value;
  lhs /= constant_psi(beta, N, n, r, cfg.u, 0) * constant_psi(beta, N, n, r, cfg.u, 1);

  const double dp = p1(sp) - p1(cfg.sbar);
  LogComplex t1 = LogComplex(0.0, kPi * dp) * f11(cfg.sbar, 1.0, m) * f11(sp, -1.0, m);
  LogComplex t2 = LogComplex(0.0, -kPi * dp) * f11(sp, 1.0, m) * f11(cfg.sbar, -1.0, m);
  LogComplex rhs = (t1 - t2) * LogComplex((2 * m - 1) * log_pref - kLn2, -kPi / 2);

  double change = std::max(std::max(a0.change, a1.change), std::max(b0.change, b1.change));
  StudyRow row = make_row(N, r, lhs, rhs, change);
  row.rel_dev_flipped = relative_deviation_or_inf(lhs, -rhs);
  return row;
}

StudyTable run_rows(const RegimeConfig& cfg, const char* theorem, StudyRow (*fn)(const RegimeConfig&, int)) {
  StudyTable t;
  t.theorem = theorem;
  t.has_flipped = cfg.regime == Regime::Bulk && cfg.n % 2 == 1;
  for (int N : cfg.N_list) t.rows.push_back(fn(cfg, N));
  return t;
}

void append_num(std::string& out, double x) {
  char buf[40];
  if (std::isnan(x))
    out += "nan";
  else if (std::isinf(x))
    out += x > 0 ? "inf" : "-inf";
  else {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out += buf;
  }
}

}  // namespace

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Subcritical: return "subcritical";
    case Regime::Critical: return "critical";
    case Regime::Supercritical: return "supercritical";
    case Regime::Bulk: return "bulk";
  }
  return "?";
}

Regime parse_regime(const std::string& name) {
  if (name == "subcritical" || name == "sub") return Regime::Subcritical;
  if (name == "critical" || name == "crit") return Regime::Critical;
  if (name == "supercritical" || name == "sup") return Regime::Supercritical;
  if (name == "bulk") return Regime::Bulk;
  throw DomainError("unknown regime '" + name + "'");
}

void RegimeConfig::validate() const {
  if (!(beta > 0) || !std::isfinite(beta)) throw DomainError("beta must be positive");
  if (n < 1) throw DomainError("n must be at least 1");
  if (m < 0) throw DomainError("m must be non-negative");
  if (static_cast<int>(sbar.size()) != n) throw DomainError("sbar must have length n");
  if (static_cast<int>(pibar.size()) != m) throw DomainError("pibar must have length m");
  check_finite(sbar, "sbar");
  check_finite(pibar, "pibar");
  check_finite(pi_fixed, "pi_fixed");
  for (int N : N_list)
    if (N < 1) throw DomainError("N_list entries must be positive");
  switch (regime) {
    case Regime::Subcritical:
      if (m != 0) throw DomainError("subcritical regime has m = 0");
      [[fallthrough]];
    case Regime::Critical:
      if (mu != 2.0) throw DomainError("soft-edge regimes below the transition need mu = 2");
      for (double p : pi_fixed)
        if (!(p < 1)) throw DomainError("pi_fixed entries must be < 1");
      break;
    case Regime::Supercritical:
      if (!(mu > 2) || !std::isfinite(mu)) throw DomainError("supercritical regime needs mu > 2");
      for (double p : pi_fixed)
        if (!(p < nu())) throw DomainError("pi_fixed entries must be < nu");
      break;
    case Regime::Bulk:
      if (!(u > -1 && u < 1)) throw DomainError("u must lie in (-1, 1)");
      if (m != 0) throw DomainError("bulk regime takes its sources from pi_fixed (m = 0)");
      if (n % 2 == 1) {
        const std::vector<double> sp = sbar_prime_of(*this);
        if (static_cast<int>(sp.size()) != n) throw DomainError("sbar_prime must have length n");
        check_finite(sp, "sbar_prime");
      }
      break;
  }
  if (hat && regime != Regime::Supercritical) throw DomainError("hat weighting is a supercritical mode");
}

double RegimeConfig::nu() const {
  if (!(mu >= 2)) throw DomainError("nu needs mu >= 2");
  return (mu + std::sqrt(mu * mu - 4)) / 2;
}

double RegimeConfig::sigma() const {
  const double v = nu();
  if (!(v > 1)) throw DomainError("sigma needs nu > 1");
  return v / std::sqrt(v * v - 1);
}

ScaledArgs apply_scaling(const RegimeConfig& cfg, int N, bool prime) {
  cfg.validate();
  if (N < 1) throw DomainError("N must be positive");
  if (cfg.r() > N) throw DomainError("rank exceeds N");
  const std::vector<double> sb = prime ? sbar_prime_of(cfg) : cfg.sbar;
  const double dN = N;
  ScaledArgs out;
  out.s.resize(cfg.n);
  std::vector<double> pi = cfg.regime == Regime::Bulk ? cfg.pi_fixed : sources_at(cfg, N);
  out.f.resize(pi.size());
  switch (cfg.regime) {
    case Regime::Subcritical:
    case Regime::Critical:
      for (int j = 0; j < cfg.n; ++j) out.s[j] = std::sqrt(dN / 2) * 2 + sb[j] / (std::sqrt(2.0) * std::pow(dN, 1.0 / 6));
      break;
    case Regime::Supercritical:
      for (int j = 0; j < cfg.n; ++j) out.s[j] = std::sqrt(dN / 2) * cfg.mu + sb[j] / (std::sqrt(2.0) * cfg.sigma());
      break;
    case Regime::Bulk: {
      const double w = std::sqrt(1 - cfg.u * cfg.u);
      for (int j = 0; j < cfg.n; ++j) out.s[j] = std::sqrt(2 * dN) * cfg.u + kPi * sb[j] / std::sqrt(2 * dN * w * w);
      for (double& p : pi) p = cfg.u + w * p;
      break;
    }
  }
  for (size_t k = 0; k < pi.size(); ++k) out.f[k] = std::sqrt(dN / 2) * pi[k];
  return out;
}

LogComplex constant_phi_sub(double beta, int N, int n) {
  if (!(beta > 0) || N < 1 || n < 1) throw DomainError("constant_phi_sub needs beta > 0, N >= 1, n >= 1");
  const double dN = N;
  const double lm = n * std::log(kPi) + n * (3 * dN * beta + beta + 2.0 * n - 2) / (6 * beta) * std::log(dN) -
                    log_gamma_const(4.0 / beta, n) - n * dN / 2 - n * (dN - 2) / 2 * kLn2;
  return lc_real(lm);
}

LogComplex constant_phi_crit(double beta, int N, int n, int m) {
  if (m < 0) throw DomainError("m must be non-negative");
  LogComplex c = constant_phi_sub(beta, N, n);
  return c * LogComplex(-n * m / 3.0 * std::log(static_cast<double>(N)), (n * m) % 2 ? kPi : 0.0);
}

LogComplex constant_phi_sup(double beta, int N, int n, int m, int r, double mu, double nu, double sigma) {
  if (!(beta > 0) || N < 1 || n < 1 || m < 0 || r < m) throw DomainError("constant_phi_sup: bad integer parameters");
  if (!(nu > 0) || !(sigma > 0) || !std::isfinite(mu)) throw DomainError("constant_phi_sup: nu, sigma must be positive");
  const double dN = N;
  const double lm = n * dN * (mu * mu - 2 * mu * nu - 2) / 4 +
                    n * (2.0 * n + beta - 2 + m * beta) / beta * std::log(sigma) +
                    n * (dN - m) / 2 * std::log(dN) - n * dN / 2 * kLn2 + n * (dN - r) * std::log(nu);
  return lc_real(lm, (n * m) % 2);
}

LogComplex constant_psi(double beta, int N, int n, int r, double u, int l) {
  if (!(beta > 0) || N < 1 || n < 1 || r < 0) throw DomainError("constant_psi: bad parameters");
  if (!(u > -1 && u < 1)) throw DomainError("u must lie in (-1, 1)");
  const double bp = 4.0 / beta;
  const double dN = N;
  const double lw = 0.5 * std::log1p(-u * u);
  if (n % 2 == 0) {
    const double m = n / 2;
    const double lm = (bp * m * (m + 1) / 2 - m * (dN + 1)) * kLn2 + (bp * m * m / 2 + m * dN) * std::log(dN) -
                      m * dN + (bp * m * (m + 1) / 2 - m + 2 * m * r) * lw;
    return lc_real(lm);
  }
  if (l != 0 && l != 1) throw DomainError("l must be 0 or 1");
  const int mi = (n + 1) / 2;
  const double m = mi;
  auto lg = [&](int k) { return k == 0 ? 0.0 : log_gamma_const(bp, k); };
  const double lm = log_binom(2 * mi - 1, mi) + lg(mi - 1) + lg(mi) - lg(2 * mi - 1) +
                    (bp * (m * m - 1) / 2 - (2 * m - 1) * (dN + 1 - l) / 2) * kLn2 +
                    (bp * m * (m - 1) / 2 + (2 * m - 1) * (dN - l) / 2) * std::log(dN) - (2 * m - 1) * dN / 2 +
                    (bp * (m * m - 1) / 2 - (2 * m - 1) / 2 + n * r) * lw + kLn2 + 0.5 * lw;
  return {lm, kPi / 2};
}

double coeff_gamma_m(int m, double beta_prime) {
  if (m < 1) throw DomainError("m must be at least 1");
  if (!(beta_prime > 0)) throw DomainError("beta_prime must be positive");
  double acc = log_binom(2 * m, m);
  for (int j = 1; j <= m; ++j) acc += std::lgamma(1 + beta_prime * j / 2) - std::lgamma(1 + beta_prime * (m + j) / 2);
  return std::exp(acc);
}

double relative_deviation_or_inf(const LogComplex& lhs, const LogComplex& rhs) { return relative_deviation(lhs, rhs); }

StudyTable study_subcritical(const RegimeConfig& cfg) {
  require_regime(cfg, Regime::Subcritical);
  return run_rows(cfg, "sub", soft_edge_row);
}

StudyTable study_critical(const RegimeConfig& cfg) {
  cfg.validate();
  if (cfg.regime != Regime::Critical && !(cfg.regime == Regime::Subcritical && cfg.m == 0))
    throw DomainError("critical study needs a critical config (or a subcritical one with m = 0)");
  return run_rows(cfg, "crit", soft_edge_row);
}

StudyTable study_supercritical(const RegimeConfig& cfg) {
  require_regime(cfg, Regime::Supercritical);
  return run_rows(cfg, cfg.hat ? "sup_hat" : "sup", soft_edge_row);
}

StudyTable study_bulk(const RegimeConfig& cfg) {
  require_regime(cfg, Regime::Bulk);
  return run_rows(cfg, cfg.n % 2 ? "bulk_odd" : "bulk_even", bulk_row);
}

StudyTable study_growing_rank(const RegimeConfig& cfg, double a, double R) {
  cfg.validate();
  if (cfg.pi_fixed.empty()) throw DomainError("growing rank needs a pi_fixed entry to replicate");
  if (!(a >= 0) || !(R > 0) || !std::isfinite(R)) throw DomainError("growing rank needs a >= 0 and R > 0");
  const double b = (cfg.regime == Regime::Subcritical || cfg.regime == Regime::Critical) ? 1.0 / 3 : 0.5;
  if (!(a < b)) throw DomainError("rank exponent must stay below the regime's bound");
  StudyTable t;
  t.theorem = "rank";
  t.has_rank = true;
  t.has_flipped = cfg.regime == Regime::Bulk && cfg.n % 2 == 1;
  for (int N : cfg.N_list) {
    RegimeConfig c = cfg;
    const int r = static_cast<int>(std::ceil(R * std::pow(static_cast<double>(N), a) - 1e-12));
    c.pi_fixed.assign(std::max(r - c.m, 0), cfg.pi_fixed.front());
    t.rows.push_back(c.regime == Regime::Bulk ? bulk_row(c, N) : soft_edge_row(c, N));
  }
  return t;
}

StudyTable run_study(const RegimeConfig& cfg) {
  switch (cfg.regime) {
    case Regime::Subcritical: return study_subcritical(cfg);
    case Regime::Critical: return study_critical(cfg);
    case Regime::Supercritical: return study_supercritical(cfg);
    case Regime::Bulk: return study_bulk(cfg);
  }
  throw InternalError("unknown regime");
}

StudyRequest default_request(const std::string& theorem) {
  StudyRequest q;
  q.theorem = theorem;
  RegimeConfig& c = q.cfg;
  c.N_list = {16, 64, 256};
  if (theorem == "sub") {
    c.sbar = {0.0};
    c.pi_fixed = {0.5};
  } else if (theorem == "crit") {
    c.regime = Regime::Critical;
    c.m = 1;
    c.pibar = {0.0};
    c.sbar = {0.0};
  } else if (theorem == "sup") {
    c.regime = Regime::Supercritical;
    c.mu = 2.5;
    c.m = 1;
    c.pibar = {-1.0};
    c.sbar = {0.3};
  } else if (theorem == "bulk") {
    c.regime = Regime::Bulk;
    c.n = 2;
    c.sbar = {0.1, 0.3};
    c.N_list = {16, 64};
  } else if (theorem == "rank") {
    c.sbar = {-1.0};
    c.pi_fixed = {-0.25};
  } else {
    throw DomainError("unknown theorem '" + theorem + "' (sub, crit, sup, bulk, rank)");
  }
  return q;
}

StudyTable run_request(const StudyRequest& req) {
  if (req.theorem == "rank") return study_growing_rank(req.cfg, req.rank_exponent, req.rank_scale);
  const Regime want = req.theorem == "sub"    ? Regime::Subcritical
                      : req.theorem == "crit" ? Regime::Critical
                      : req.theorem == "sup"  ? Regime::Supercritical
                      : req.theorem == "bulk" ? Regime::Bulk
                                              : throw DomainError("unknown theorem '" + req.theorem + "'");
  if (want == Regime::Critical) return study_critical(req.cfg);
  require_regime(req.cfg, want);
  return run_study(req.cfg);
}

double SweepRow::matching() const {
  switch (expected) {
    case Regime::Subcritical: return dev_sub;
    case Regime::Critical: return dev_crit;
    default: return dev_sup;
  }
}

double SweepRow::best_wrong() const {
  double best = std::numeric_limits<double>::infinity();
  if (expected != Regime::Subcritical) best = std::min(best, dev_sub);
  if (expected != Regime::Critical) best = std::min(best, dev_crit);
  if (expected != Regime::Supercritical && !std::isnan(dev_sup)) best = std::min(best, dev_sup);
  return best;
}

std::vector<SweepRow> trichotomy_sweep(double beta, int N, const std::vector<double>& pi1, double sbar) {
  if (!(beta > 0) || N < 1 || !std::isfinite(sbar)) throw DomainError("sweep needs beta > 0, N >= 1, finite sbar");
  std::vector<SweepRow> out;
  const double dN = N;
  const double alpha = beta / 2;
  for (double p : pi1) {
    if (!std::isfinite(p)) throw DomainError("pi1 must be finite");
    SweepRow row;
    row.pi1 = p;
    row.expected = p < 1 ? Regime::Subcritical : (p == 1 ? Regime::Critical : Regime::Supercritical);
    EnsembleSpec spec{beta, N, {std::sqrt(dN / 2) * p}};
    // Probe at the edge for π₁ <= 1, at the outlier location μ = π₁ + 1/π₁ otherwise.
    RegimeConfig c;
    c.beta = beta;
    c.sbar = {sbar};
    c.N_list = {N};
    if (p > 1) {
      c.regime = Regime::Supercritical;
      c.m = 1;
      c.mu = p + 1 / p;
      c.pibar = {0.0};
    }
    const cplx s = apply_scaling(c, N).s[0];
    const double edge_sbar = (s.real() - std::sqrt(2 * dN)) * std::sqrt(2.0) * std::pow(dN, 1.0 / 6);
    LogComplex ph = phi(spec, std::span(&s, 1), 0);

    row.dev_sub = relative_deviation(ph / constant_phi_sub(beta, N, 1),
                                     LogComplex::from_value((1 - p) * airy_ai(edge_sbar)));
    AiryArgs aa;
    aa.s = {edge_sbar};
    aa.f = {0.0};
    aa.alpha = alpha;
    row.dev_crit = relative_deviation(ph / constant_phi_crit(beta, N, 1, 1), LogComplex::from_value(airy_mv(aa)));
    row.dev_sup = p > 1 ? soft_edge_row(c, N).rel_dev : std::numeric_limits<double>::quiet_NaN();
    out.push_back(row);
  }
  return out;
}

std::string StudyTable::to_csv() const {
  std::string out = "N,lhs_log_mag,lhs_phase,rhs_log_mag,rhs_phase,rel_dev";
  if (has_rank) out += ",rank";
  if (has_flipped) out += ",rel_dev_sign_flipped";
  out += "\n";
  for (const StudyRow& row : rows) {
    out += std::to_string(row.N);
    for (double x : {row.lhs.log_mag, row.lhs.phase, row.rhs.log_mag, row.rhs.phase, row.rel_dev}) {
      out += ",";
      append_num(out, x);
    }
    if (has_rank) out += "," + std::to_string(row.r);
    if (has_flipped) {
      out += ",";
      append_num(out, row.rel_dev_flipped);
    }
    out += "\n";
  }
  return out;
}

}  // namespace gbe
