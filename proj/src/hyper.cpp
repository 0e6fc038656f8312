#include "gbe/hyper.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>

#include "gbe/error.hpp"
#include "gbe/jack.hpp"
#include "gbe/quadrature.hpp"

namespace gbe {

void SeriesControl::validate() const {
  if (max_degree < 0 || max_degree > JackTable::kMaxDegree) throw DomainError("max_degree out of range");
  if (!(rel_tol > 0)) throw DomainError("rel_tol must be positive");
  if (stagnation_window < 1) throw DomainError("stagnation_window must be at least 1");
}

namespace {

void check_denominators(std::span<const cplx> b, int n, double alpha) {
  for (cplx bj : b) {
    for (int i = 1; i <= std::max(n, 1); ++i) {
      cplx t = (i - 1) / alpha - bj;
      double r = std::round(t.real());
      if (std::abs(t.imag()) < 1e-12 && r >= 0 && std::abs(t.real() - r) < 1e-10 * std::max(1.0, r))
        throw DomainError("forbidden denominator parameter in hypergeometric series");
    }
  }
}

std::vector<std::vector<cplx>> power_table(std::span<const cplx> x, int max_degree) {
  std::vector<std::vector<cplx>> pw(x.size(), std::vector<cplx>(max_degree + 1));
  for (size_t i = 0; i < x.size(); ++i) {
    pw[i][0] = 1.0;
    for (int e = 1; e <= max_degree; ++e) pw[i][e] = pw[i][e - 1] * x[i];
  }
  return pw;
}

// Per-thread memo of the Pochhammer/hook coefficients, reused while the same
// parameters are summed at many points.
struct CoefCache {
  std::vector<cplx> a, b;
  double alpha = 0.0;
  int n = -1;
  std::vector<std::vector<cplx>> shells;

  const std::vector<cplx>& get(std::span<const cplx> pa, std::span<const cplx> pb, double al, int nv, int d,
                               const JackShell& sh) {
    if (al != alpha || nv != n || !std::equal(pa.begin(), pa.end(), a.begin(), a.end()) ||
        !std::equal(pb.begin(), pb.end(), b.begin(), b.end())) {
      a.assign(pa.begin(), pa.end());
      b.assign(pb.begin(), pb.end());
      alpha = al;
      n = nv;
      shells.clear();
    }
    while (static_cast<int>(shells.size()) <= d) shells.emplace_back();
    auto& c = shells[d];
    if (c.empty() && !sh.partitions.empty()) {
      c.resize(sh.partitions.size());
      for (size_t K = 0; K < sh.partitions.size(); ++K) {
        const Partition& kappa = sh.partitions[K];
        cplx coef = 1.0 / sh.hook[K];
        for (cplx ai : pa) coef *= gen_pochhammer(ai, kappa, al);
        if (coef != cplx(0))
          for (cplx bj : pb) coef /= gen_pochhammer(bj, kappa, al);
        c[K] = coef;
      }
    }
    return c;
  }
};

SeriesValue sum_series(std::span<const cplx> a, std::span<const cplx> b, std::span<const cplx> x,
                       std::optional<std::span<const cplx>> y, double alpha, const SeriesControl& ctrl) {
  ctrl.validate();
  if (!(alpha > 0)) throw DomainError("alpha must be positive");
  const int n = static_cast<int>(x.size());
  if (y && static_cast<int>(y->size()) != n) throw DomainError("argument sets differ in length");
  if (a.size() > b.size() + 1) throw NotImplementedError("p > q+1 hypergeometric series are not supported");
  check_denominators(b, n, alpha);
  if (a.size() == b.size() + 1) {
    auto outside = [](std::span<const cplx> v) {
      return std::any_of(v.begin(), v.end(), [](cplx z) { return std::abs(z) >= 1.0; });
    };
    if (outside(x) || (y && outside(*y))) throw ConvergenceError("p = q+1 series diverges for |x_i| >= 1");
  }

  SeriesValue out{1.0, {}};
  if (n == 0) {
    out.report.converged = true;
    out.report.max_shell = 1.0;
    return out;
  }

  const auto& table = JackTable::get(alpha, n);
  thread_local CoefCache cache;
  auto px = power_table(x, ctrl.max_degree);
  std::vector<std::vector<cplx>> py;
  if (y) py = power_table(*y, ctrl.max_degree);

  cplx sum = 0.0;
  std::vector<double> mags;
  std::vector<cplx> mx, my;
  int small = 0;
  SeriesReport& rep = out.report;
  for (int d = 0; d <= ctrl.max_degree; ++d) {
    const auto& sh = table.shell(d);
    JackTable::monomials(sh, px, mx);
    if (y) JackTable::monomials(sh, py, my);
    const auto& coefs = cache.get(a, b, alpha, n, d, sh);
    cplx shell_sum = 0.0;
    for (size_t K = 0; K < sh.partitions.size(); ++K) {
      const cplx coef = coefs[K];
      if (coef == cplx(0)) continue;
      cplx vx = 0.0;
      for (const auto& [i, c] : sh.rows[K]) vx += c * mx[i];
      if (y) {
        cplx vy = 0.0;
        for (const auto& [i, c] : sh.rows[K]) vy += c * my[i];
        shell_sum += coef * vx * vy / sh.at_ones[K];
      } else {
        shell_sum += coef * vx;
      }
    }
    sum += shell_sum;
    double mag = std::abs(shell_sum);
    mags.push_back(mag);
    rep.max_shell = std::max(rep.max_shell, mag);
    rep.degree_reached = d;
    small = (mag <= ctrl.rel_tol * std::abs(sum)) ? small + 1 : 0;
    if (small >= ctrl.stagnation_window) {
      rep.converged = true;
      break;
    }
  }
  int w = std::min<int>(ctrl.stagnation_window, static_cast<int>(mags.size()));
  double tail = 0.0, tail_max = 0.0;
  for (int i = 0; i < w; ++i) {
    tail += mags[mags.size() - 1 - i];
    tail_max = std::max(tail_max, mags[mags.size() - 1 - i]);
  }
  rep.tail_estimate = rep.converged ? 2.0 * tail_max : tail;
  rep.cancellation = std::abs(sum) > 0 ? rep.max_shell / std::abs(sum) : INFINITY;
  out.value = sum;
  return out;
}

cplx sum_p1(std::span<const cplx> x) {
  cplx s = 0.0;
  for (cplx v : x) s += v;
  return s;
}

cplx log_kummer_series(double a, double b, cplx z) {
  cplx term = 1.0, sum = 1.0;
  int small = 0;
  for (int k = 0; k < 20000; ++k) {
    term *= (a + k) / (b + k) * z / double(k + 1);
    sum += term;
    if (term == cplx(0)) break;
    small = std::abs(term) < 1e-17 * std::abs(sum) ? small + 1 : 0;
    if (small >= 3) break;
  }
  return std::log(sum);
}

}  // namespace

cplx log_kummer_m(double a, double b, cplx z) {
  if (b <= 0 && std::abs(b - std::round(b)) < 1e-14) throw DomainError("Kummer M undefined for b in -N0");
  if (z == cplx(0)) return 0.0;
  if (!(b > a && a > 0)) return log_kummer_series(a, b, z);
  if (z.real() > 0) return z + log_kummer_m(b - a, b, -z);
  if (std::abs(z) <= 6.0) return log_kummer_series(a, b, z);
  int nodes = 32 + static_cast<int>(std::ceil(0.6 * std::abs(z)));
  nodes = (nodes + 15) / 16 * 16;
  if (nodes > 2048) throw ConvergenceError("Kummer argument too large for the integral rule");
  const auto& rule = gauss_jacobi(nodes, b - a - 1, a - 1);
  cplx acc = 0.0;
  for (int i = 0; i < nodes; ++i) acc += rule.weights[i] * std::exp(z * (1 + rule.nodes[i]) / 2.0);
  double lognorm = std::lgamma(b) - std::lgamma(a) - std::lgamma(b - a) + (1 - b) * std::log(2.0);
  return lognorm + std::log(acc);
}

SeriesValue hyper_pq(std::span<const cplx> a, std::span<const cplx> b, std::span<const cplx> x, double alpha,
                     const SeriesControl& ctrl) {
  return sum_series(a, b, x, std::nullopt, alpha, ctrl);
}

SeriesValue hyper_pq_two_set(std::span<const cplx> a, std::span<const cplx> b, std::span<const cplx> x,
                             std::span<const cplx> y, double alpha, const SeriesControl& ctrl) {
  if (x.size() != y.size()) throw DomainError("argument sets differ in length");
  return sum_series(a, b, x, y, alpha, ctrl);
}

SeriesValue f00_clustered(std::span<const cplx> x, cplx a, cplx b, int k, double alpha, const SeriesControl& ctrl) {
  const int n = static_cast<int>(x.size());
  if (k < 0 || k > n) throw DomainError("cluster size outside [0, n]");
  if (!(alpha > 0)) throw DomainError("alpha must be positive");
  cplx p1 = sum_p1(x);
  if (k == 0 || k == n) {
    SeriesValue v{std::exp((k == n ? a : b) * p1), {}};
    v.report.converged = true;
    return v;
  }
  std::vector<cplx> z(x.begin(), x.end());
  for (auto& v : z) v *= (a - b);
  cplx pa = k / alpha, pb = n / alpha;
  auto r = hyper_pq(std::span(&pa, 1), std::span(&pb, 1), z, alpha, ctrl);
  r.value *= std::exp(b * p1);
  return r;
}

SeriesValue f00_clustered_shifted(std::span<const cplx> x, cplx a, cplx b, int k, double alpha,
                                  const SeriesControl& ctrl, int ref) {
  const int n = static_cast<int>(x.size());
  if (k < 0 || k > n) throw DomainError("cluster size outside [0, n]");
  if (ref < 0 || ref >= std::max(n, 1)) throw DomainError("pivot index out of range");
  if (!(alpha > 0)) throw DomainError("alpha must be positive");
  cplx p1 = sum_p1(x);
  if (k == 0 || k == n) {
    SeriesValue v{std::exp((k == n ? a : b) * p1), {}};
    v.report.converged = true;
    return v;
  }
  std::vector<cplx> z;
  for (int j = 0; j < n; ++j)
    if (j != ref) z.push_back((a - b) * (x[j] - x[ref]));
  cplx pa = k / alpha, pb = n / alpha;
  auto r = hyper_pq(std::span(&pa, 1), std::span(&pb, 1), z, alpha, ctrl);
  r.value *= std::exp((a - b) * double(k) * x[ref] + b * p1);
  return r;
}

namespace {

// Exactly two distinct values (or one); first value and its multiplicity.
bool two_valued(std::span<const cplx> v, cplx& a, int& k, cplx& b) {
  a = v[0];
  k = 0;
  bool have_b = false;
  for (cplx t : v) {
    if (t == a) {
      ++k;
    } else if (!have_b) {
      b = t;
      have_b = true;
    } else if (t != b) {
      return false;
    }
  }
  if (!have_b) b = a;
  return true;
}

bool well_separated(std::span<const cplx> v) {
  double scale = 1.0;
  for (cplx t : v) scale = std::max(scale, std::abs(t));
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      if (std::abs(v[i] - v[j]) < 1e-3 * scale) return false;
  return true;
}

cplx log_vandermonde(std::span<const cplx> v) {
  cplx s = 0.0;
  for (size_t j = 0; j < v.size(); ++j)
    for (size_t k = j + 1; k < v.size(); ++k) s += std::log(v[k] - v[j]);
  return s;
}

}  // namespace

namespace {

SeriesControl deeper(SeriesControl c) {
  c.max_degree = JackTable::kMaxDegree;
  return c;
}

}  // namespace

LogF00 log_f00(std::span<const cplx> x, std::span<const cplx> y, double alpha, const SeriesControl& ctrl) {
  if (x.size() != y.size()) throw DomainError("argument sets differ in length");
  if (!(alpha > 0)) throw DomainError("alpha must be positive");
  const int n = static_cast<int>(x.size());
  LogF00 out{0.0, {}};
  out.report.converged = true;
  if (n == 0) return out;
  if (n == 1) {
    out.log_value = x[0] * y[0];
    return out;
  }

  cplx a, b;
  int k;
  std::span<const cplx> xs = x, ys = y;
  bool clustered = two_valued(ys, a, k, b);
  if (!clustered && two_valued(xs, a, k, b)) {
    std::swap(xs, ys);
    clustered = true;
  }
  if (clustered) {
    cplx p1 = sum_p1(xs);
    if (k == n) {
      out.log_value = a * p1;
      return out;
    }
    // Pivot on the point that keeps the shifted arguments in Re >= 0.
    int ref = 0;
    for (int j = 1; j < n; ++j)
      if (((a - b) * xs[j]).real() < ((a - b) * xs[ref]).real()) ref = j;
    out.log_value = (a - b) * double(k) * xs[ref] + b * p1;
    std::vector<cplx> z;
    for (int j = 0; j < n; ++j)
      if (j != ref) z.push_back((a - b) * (xs[j] - xs[ref]));
    if (n == 2) {
      out.log_value += log_kummer_m(k / alpha, n / alpha, z[0]);
      return out;
    }
    cplx pa = k / alpha, pb = n / alpha;
    auto r = hyper_pq(std::span(&pa, 1), std::span(&pb, 1), z, alpha, ctrl);
    if (!r.report.converged && ctrl.max_degree < JackTable::kMaxDegree)
      r = hyper_pq(std::span(&pa, 1), std::span(&pb, 1), z, alpha, deeper(ctrl));
    if (!r.report.converged) throw ConvergenceError("₁F₁ series did not converge; reduce the arguments");
    out.log_value += std::log(r.value);
    out.report = r.report;
    return out;
  }

  if (alpha == 1.0 && well_separated(x) && well_separated(y)) {
    Eigen::MatrixXcd m(n, n);
    cplx log_scale = 0.0;
    for (int j = 0; j < n; ++j) {
      double row_max = -INFINITY;
      for (int l = 0; l < n; ++l) row_max = std::max(row_max, (x[j] * y[l]).real());
      for (int l = 0; l < n; ++l) m(j, l) = std::exp(x[j] * y[l] - row_max);
      log_scale += row_max;
    }
    double log_fact = 0.0;
    for (int j = 1; j < n; ++j) log_fact += std::lgamma(j + 1.0);
    out.log_value = log_fact + log_scale + std::log(m.partialPivLu().determinant()) - log_vandermonde(x) -
                    log_vandermonde(y);
    return out;
  }

  // Center both sets: the series then only sees the spreads.
  cplx xm = sum_p1(x) / double(n), ym = sum_p1(y) / double(n);
  std::vector<cplx> xc(x.begin(), x.end()), yc(y.begin(), y.end());
  for (auto& v : xc) v -= xm;
  for (auto& v : yc) v -= ym;
  auto r = hyper_pq_two_set({}, {}, xc, yc, alpha, ctrl);
  if (!r.report.converged && ctrl.max_degree < JackTable::kMaxDegree)
    r = hyper_pq_two_set({}, {}, xc, yc, alpha, deeper(ctrl));
  if (!r.report.converged) throw ConvergenceError("₀𝓕₀ series did not converge; reduce the arguments");
  out.log_value = xm * sum_p1(y) + ym * sum_p1(x) - double(n) * xm * ym + std::log(r.value);
  out.report = r.report;
  return out;
}

}  // namespace gbe
