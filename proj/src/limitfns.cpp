#include "gbe/limitfns.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "gbe/ensemble.hpp"
#include "gbe/error.hpp"
#include "gbe/jack.hpp"
#include "integrate.hpp"

namespace gbe {

namespace {

constexpr cplx I(0.0, 1.0);

double min_gap(std::span<const cplx> s) {
  double g = INFINITY;
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j) g = std::min(g, std::abs(s[i] - s[j]));
  return g;
}

cplx log_vandermonde(std::span<const cplx> v) {
  cplx acc = 0.0;
  for (size_t j = 0; j < v.size(); ++j)
    for (size_t k = j + 1; k < v.size(); ++k) acc += std::log(v[k] - v[j]);
  return acc;
}

// log det(e^{i s_j w_k}) with per-row rescaling.
cplx log_det_exp(std::span<const cplx> s, std::span<const cplx> w) {
  const int n = static_cast<int>(s.size());
  Eigen::MatrixXcd m(n, n);
  cplx scale = 0.0;
  for (int j = 0; j < n; ++j) {
    double top = -INFINITY;
    for (int k = 0; k < n; ++k) top = std::max(top, (I * s[j] * w[k]).real());
    for (int k = 0; k < n; ++k) m(j, k) = std::exp(I * s[j] * w[k] - top);
    scale += top;
  }
  cplx d = m.partialPivLu().determinant();
  return scale + std::log(d);
}

std::vector<cplx> elementary(std::span<const cplx> f) {
  std::vector<cplx> e(f.size() + 1, 0.0);
  e[0] = 1.0;
  for (size_t l = 0; l < f.size(); ++l)
    for (size_t i = l + 1; i > 0; --i) e[i] += e[i - 1] * f[l];
  return e;
}

// Integral over R^n (or a shifted copy) of
//   exp(Σ_j weight(w_j)) Π_{j,k}(i w_j + f_k) |Δ(w)|^{2/α} ₀𝓕₀(s; iw).
struct SpectralIntegral {
  std::vector<cplx> s, f;
  double alpha;
  cplx (*weight)(cplx);
  const SeriesControl* ctrl;

  int n() const { return static_cast<int>(s.size()); }

  cplx one_variable(cplx w) const {
    cplx acc = weight(w);
    for (cplx fk : f) acc += std::log(I * w + fk);
    return acc;
  }

  bool det_kernel() const {
    if (alpha != 1.0 || n() < 3) return false;
    double scale = 1.0;
    for (cplx v : s) scale = std::max(scale, std::abs(v));
    return min_gap(s) > 1e-3 * scale;
  }

  // Largest Re Σ_j i s_j w_σ(j) over permutations; bounds |₀𝓕₀(s; iw)|
  // whenever the group-integral representation applies.
  double max_pairing(std::span<const cplx> w) const {
    std::vector<int> p(n());
    for (int j = 0; j < n(); ++j) p[j] = j;
    double best = -INFINITY;
    do {
      double v = 0.0;
      for (int j = 0; j < n(); ++j) v += (I * s[j] * w[p[j]]).real();
      best = std::max(best, v);
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
  }

  detail::IntegralResult run(double shift, double center, double hw, int fixed_nodes, double tol) const {
    const int dim = n();
    const double c = 2.0 / alpha;
    const bool use_det = det_kernel();
    cplx det_const = 0.0;
    if (use_det) {
      for (int j = 1; j < dim; ++j) det_const += std::lgamma(j + 1.0);
      det_const -= log_vandermonde(s) + double(dim * (dim - 1) / 2) * std::log(I);
    }
    const bool analytic = dim == 1 || detail::even_integer(c);
    if (analytic) {
      auto log_f = [&](std::span<const cplx> w) -> cplx {
        cplx acc = 0.0;
        for (int j = 0; j < dim; ++j) acc += one_variable(w[j]);
        if (dim == 1) return acc + I * s[0] * w[0];
        for (int j = 0; j < dim; ++j)
          for (int k = j + 1; k < dim; ++k)
            if (w[k] == w[j]) return -INFINITY;
        if (use_det) return acc + det_const + log_vandermonde(w) + log_det_exp(s, w);
        std::vector<cplx> iw(w.begin(), w.end());
        for (auto& v : iw) v *= I;
        auto h = log_f00(s, iw, alpha, *ctrl);
        if (h.report.cancellation > 1e8) throw ConvergenceError("hypergeometric factor lost precision");
        return acc + c * log_vandermonde(w) + h.log_value;
      };
      auto log_bound = [&](std::span<const cplx> w) {
        double acc = 0.0;
        for (int j = 0; j < dim; ++j) acc += one_variable(w[j]).real();
        if (use_det) return acc + log_vandermonde(w).real() + max_pairing(w);
        return acc + c * log_vandermonde(w).real() + max_pairing(w);
      };
      const int start = dim == 1 ? 64 : (dim == 2 ? 32 : 16);
      const int maxn = dim == 1 ? (1 << 16) : (dim == 2 ? 2048 : 256);
      return detail::trapezoid_nd(dim, center, shift, hw, start, maxn, tol, fixed_nodes, log_f,
                                  dim == 1 ? nullptr : std::function<double(std::span<const cplx>)>(log_bound));
    }
    if (shift != 0.0) throw DomainError("shifted contour needs n = 1 or an even integer Vandermonde exponent");
    auto log_f = [&](std::span<const double> x) -> cplx {
      cplx acc = 0.0;
      std::vector<cplx> iw(dim);
      for (int j = 0; j < dim; ++j) {
        acc += one_variable(x[j]);
        iw[j] = I * x[j];
      }
      auto h = log_f00(s, iw, alpha, *ctrl);
      if (h.report.cancellation > 1e8) throw ConvergenceError("hypergeometric factor lost precision");
      return acc + h.log_value;
    };
    auto log_bound = [&](std::span<const double> x) {
      double acc = 0.0;
      std::vector<cplx> w(x.begin(), x.end());
      for (int j = 0; j < dim; ++j) acc += one_variable(w[j]).real();
      return acc + max_pairing(w);
    };
    return detail::chamber_nd(dim, c, center - hw, center + hw, 2 * hw, 24, 125, tol, fixed_nodes, log_f,
                              log_bound);
  }
};

cplx cubic_weight(cplx w) { return I * w * w * w / 3.0; }
cplx gauss_weight(cplx w) { return -w * w / 2.0; }

cplx mean(std::span<const cplx> v) {
  cplx m = 0.0;
  for (cplx t : v) m += t;
  return v.empty() ? m : m / double(v.size());
}

void check_finite(std::span<const cplx> v, const char* what) {
  for (cplx t : v)
    if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) throw DomainError(std::string(what) + " must be finite");
}

double airy_default_shift(cplx sbar) {
  double x = sbar.real();
  if (x < -8.0) return std::max(0.5, 12.0 / -x);
  return std::max(1.5, std::sqrt(std::max(0.0, x)));
}

cplx airy_1d(cplx z, bool derivative) {
  check_finite(std::span(&z, 1), "Airy argument");
  const double shift = std::max(0.5, std::sqrt(std::max(0.0, z.real())));
  auto prof = [&](double x) {
    cplx w(x, shift);
    cplx v = I * (w * w * w / 3.0 + z * w);
    if (derivative) v += std::log(I * w);
    return v.real();
  };
  double center, hw;
  detail::profile_window(prof, std::sqrt(200.0 / shift) + std::sqrt(std::abs(z)) + 5, 1.1, center, hw);
  auto log_f = [&](std::span<const cplx> w) {
    cplx v = I * (w[0] * w[0] * w[0] / 3.0 + z * w[0]);
    if (derivative) v += std::log(I * w[0]);
    return v;
  };
  auto r = detail::trapezoid_nd(1, center, shift, hw, 64, 1 << 16, 1e-14, 0, log_f);
  return r.value.value() / (2 * std::numbers::pi);
}

}  // namespace

cplx airy_ai(cplx z) { return airy_1d(z, false); }
cplx airy_ai_prime(cplx z) { return airy_1d(z, true); }

cplx airy_mv(const AiryArgs& args, const SeriesControl& ctrl, QuadratureReport* report) {
  const int n = static_cast<int>(args.s.size());
  if (n < 1) throw DomainError("need at least one spectral argument");
  if (n > 3) throw NotImplementedError("Airy quadrature supports n <= 3");
  if (!(args.alpha > 0)) throw DomainError("alpha must be positive");
  check_finite(args.s, "s");
  check_finite(args.f, "f");
  args.contour.validate();
  ctrl.validate();
  if (n > 1 && !detail::even_integer(2.0 / args.alpha))
    throw NotImplementedError("multivariate Airy quadrature needs 2/alpha to be an even integer");
  cplx sbar = mean(args.s);
  double shift = args.contour.auto_shift ? airy_default_shift(sbar) : args.contour.shift;
  if (!(shift > 0)) throw DomainError("Airy contour needs a positive shift");

  SeriesControl deep = ctrl;
  deep.max_degree = std::max(ctrl.max_degree, 120);
  SpectralIntegral g{args.s, args.f, args.alpha, cubic_weight, &deep};
  auto prof = [&](double x) {
    cplx w(x, shift);
    return (g.one_variable(w) + I * sbar * w).real();
  };
  double center, hw;
  detail::profile_window(prof, std::sqrt(200.0 / shift) + std::sqrt(std::abs(sbar)) + 5, n == 1 ? 1.1 : 1.25,
                         center, hw);
  if (args.contour.half_width > 0) hw = args.contour.half_width;
  const double tol = n == 1 ? 1e-13 : (n == 2 ? 1e-10 : 1e-8);
  auto r = g.run(shift, center, hw, args.contour.nodes, tol);
  if (report) *report = {shift, center, hw, r.nodes, r.change, r.lost_digits, false};
  if (args.contour.nodes == 0 && r.change > 1e-6)
    throw ConvergenceError("Airy quadrature did not settle; enlarge the shift or half_width");
  return r.value.value() * std::pow(2 * std::numbers::pi, -n);
}

cplx airy_mv_det_alpha1(std::span<const cplx> s, std::span<const cplx> f) {
  const int n = static_cast<int>(s.size());
  const int m = static_cast<int>(f.size());
  if (n < 1) throw DomainError("need at least one spectral argument");
  check_finite(s, "s");
  check_finite(f, "f");
  if (n > 1 && min_gap(s) < 1e-6) throw DomainError("determinant formula needs distinct s (gap >= 1e-6)");
  const int top = n - 1 + m;
  auto e = elementary(f);
  Eigen::MatrixXcd a(n, n);
  for (int j = 0; j < n; ++j) {
    std::vector<cplx> d(std::max(top + 1, 2));
    d[0] = airy_ai(s[j]);
    d[1] = airy_ai_prime(s[j]);
    for (int k = 0; k + 2 <= top; ++k) d[k + 2] = s[j] * d[k] + (k >= 1 ? double(k) * d[k - 1] : 0.0);
    for (int k = 1; k <= n; ++k) {
      cplx v = 0.0;
      for (int i = 0; i <= m; ++i) v += e[m - i] * d[i + k - 1];
      a(k - 1, j) = v;
    }
  }
  double fact = 1.0;
  for (int k = 1; k <= n; ++k) fact *= std::tgamma(k + 1.0);
  double sign = (n * (n - 1) / 2) % 2 ? -1.0 : 1.0;
  return sign * fact * a.determinant() / std::exp(log_vandermonde(s));
}

cplx gauss_mv(std::span<const cplx> s, std::span<const cplx> f, double alpha, int nodes, const SeriesControl& ctrl,
              QuadratureReport* report) {
  const int n = static_cast<int>(s.size());
  if (n < 1) throw DomainError("need at least one spectral argument");
  if (n > 3) throw NotImplementedError("Gaussian quadrature supports n <= 3");
  if (!(alpha > 0)) throw DomainError("alpha must be positive");
  if (nodes != 0 && nodes < 2) throw DomainError("nodes must be at least 2");
  check_finite(s, "s");
  check_finite(f, "f");
  ctrl.validate();
  SeriesControl deep = ctrl;
  deep.max_degree = std::max(ctrl.max_degree, 120);
  SpectralIntegral g{std::vector<cplx>(s.begin(), s.end()), std::vector<cplx>(f.begin(), f.end()), alpha,
                     gauss_weight, &deep};
  const bool analytic = n == 1 || detail::even_integer(2.0 / alpha);
  cplx sbar = mean(s);
  double shift = analytic ? sbar.real() : 0.0;
  auto prof = [&](double x) {
    cplx w(x, shift);
    return (g.one_variable(w) + I * sbar * w).real();
  };
  double fmax = 0.0;
  for (cplx t : f) fmax = std::max(fmax, std::abs(t));
  double center, hw;
  detail::profile_window(prof, 20 + fmax + std::abs(sbar), n == 1 ? 1.1 : 1.25, center, hw);
  const double tol = n == 1 ? 1e-13 : (n == 2 ? 1e-11 : 1e-9);
  auto r = g.run(shift, center, hw, nodes, tol);
  if (report) *report = {shift, center, hw, r.nodes, r.change, r.lost_digits, !analytic};
  if (nodes == 0 && r.change > 1e-6) throw ConvergenceError("Gaussian quadrature did not settle");
  return r.value.value() / gamma_const(2.0 / alpha, n);
}

cplx gauss_mv_det_alpha1(std::span<const cplx> s, std::span<const cplx> f) {
  const int n = static_cast<int>(s.size());
  const int m = static_cast<int>(f.size());
  if (n < 1) throw DomainError("need at least one spectral argument");
  check_finite(s, "s");
  check_finite(f, "f");
  if (n > 1 && min_gap(s) < 1e-6) throw DomainError("determinant formula needs distinct s (gap >= 1e-6)");
  const int top = n - 1 + m;
  auto e = elementary(f);
  Eigen::MatrixXcd a(n, n);
  for (int j = 0; j < n; ++j) {
    // (d/ds)^i e^{-s^2/2} = (-1)^i He_i(s) e^{-s^2/2}
    std::vector<cplx> he(top + 1);
    he[0] = 1.0;
    if (top >= 1) he[1] = s[j];
    for (int i = 1; i < top; ++i) he[i + 1] = s[j] * he[i] - double(i) * he[i - 1];
    cplx g = std::exp(-s[j] * s[j] / 2.0);
    for (int k = 1; k <= n; ++k) {
      cplx v = 0.0;
      for (int i = 0; i <= m; ++i) {
        int d = i + k - 1;
        v += e[m - i] * (d % 2 ? -1.0 : 1.0) * he[d];
      }
      a(k - 1, j) = v * g;
    }
  }
  double sign = (n * (n - 1) / 2) % 2 ? -1.0 : 1.0;
  return sign * a.determinant() / std::exp(log_vandermonde(s));
}

cplx gauss_mv_m1_hermite(std::span<const cplx> s, cplx z, double alpha) {
  const int n = static_cast<int>(s.size());
  if (!(alpha > 0)) throw DomainError("alpha must be positive");
  check_finite(s, "s");
  auto e = elementary(s);
  cplx p2 = 0.0;
  for (cplx v : s) p2 += v * v;
  cplx sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    cplx hbar = 0.0;
    for (int l = 0; 2 * l <= k; ++l)
      hbar += std::exp(std::lgamma(k + 1.0) - std::lgamma(l + 1.0) - std::lgamma(k - 2 * l + 1.0)) *
              std::pow(2.0 * z, k - 2 * l);
    sum += std::pow(-2.0, n - k) * e[n - k] * hbar;
  }
  return std::exp(-p2 / alpha) / std::pow(2 * alpha, n / 2.0) * sum;
}

cplx gauss_mv_series(std::span<const cplx> s, std::span<const cplx> f, double alpha) {
  const int n = static_cast<int>(s.size());
  const int m = static_cast<int>(f.size());
  if (n < 1) throw DomainError("need at least one spectral argument");
  if (n * m > 12) throw DomainError("operator expansion budget exceeded (n*m > 12)");
  if (!(alpha > 0)) throw DomainError("alpha must be positive");
  check_finite(s, "s");
  check_finite(f, "f");
  // q(t) = Π_k (f_k - t) = Σ_d c_d t^d
  std::vector<cplx> q(m + 1, 0.0);
  q[0] = 1.0;
  for (int k = 0; k < m; ++k) {
    for (int d = k + 1; d > 0; --d) q[d] = q[d] * f[k] - q[d - 1];
    q[0] *= f[k];
  }
  SymmetricPolynomial poly(n);
  for (int w = 0; w <= n * m; ++w)
    for (const auto& mu : enumerate_partitions(w, n)) {
      if (mu[0] > m) continue;
      cplx c = 1.0;
      for (int i = 0; i < n; ++i) c *= q[mu[i]];
      if (c != cplx(0)) poly.add(mu, c);
    }
  SymmetricPolynomial acc = poly, term = poly;
  for (int i = 1; 2 * i <= n * m; ++i) {
    term = apply_operator(OperatorKind::D, 0, term, alpha);
    term *= -0.5 / i;
    acc += term;
  }
  cplx p2 = 0.0;
  for (cplx v : s) p2 += v * v;
  return std::exp(-0.5 * p2) * evaluate(acc, s);
}

std::vector<AsymptoticRow> airy_asymptotics(const AsymptoticParams& p, std::span<const double> xs,
                                            const SeriesControl& ctrl) {
  const int n = static_cast<int>(p.s.size());
  const int r = static_cast<int>(p.f.size());
  if (n < 1) throw DomainError("need at least one spectral argument");
  if (!(p.alpha > 0)) throw DomainError("alpha must be positive");
  const double a = p.alpha;
  std::vector<AsymptoticRow> rows;
  if (p.side == AirySide::Right) {
    if (p.k < 0 || p.k > r) throw DomainError("k must lie in [0, r]");
    for (int l = p.k; l < r; ++l)
      if (p.f[l] == cplx(1.0)) throw DomainError("fixed sources must differ from 1");
    std::vector<cplx> zeros(n, 0.0);
    std::span<const cplx> fk(p.f.data(), p.k);
    cplx g0 = p.k == 0 ? cplx(1.0) : gauss_mv(zeros, fk, a, 0, ctrl);
    for (double x : xs) {
      if (!(x > 0)) throw DomainError("x must be positive");
      AiryArgs args;
      args.alpha = a;
      for (cplx sj : p.s) args.s.push_back(x + sj / std::sqrt(x));
      for (int l = 0; l < r; ++l) {
        cplx fb = l < p.k ? 1.0 + p.f[l] / std::sqrt(2 * std::pow(x, 1.5)) : p.f[l];
        args.f.push_back(std::sqrt(x) * fb);
      }
      cplx lhs = airy_mv(args, ctrl);
      cplx logr = log_gamma_const(2 / a, n) - n * std::log(2 * std::numbers::pi) -
                  ((1.0 + p.k) * n + n * (n - 1) / a) / 2 * std::log(2.0) - 2.0 * n / 3 * std::pow(x, 1.5) -
                  ((1.0 - 2 * r + 3 * p.k) * n + n * (n - 1) / a) / 4 * std::log(x);
      for (int l = p.k; l < r; ++l) logr += double(n) * std::log(p.f[l] - 1.0);
      for (cplx sj : p.s) logr -= sj;
      cplx rhs = std::exp(logr) * g0;
      rows.push_back({x, lhs, rhs, lhs / rhs});
    }
    return rows;
  }
  if (n % 2) throw DomainError("left-side asymptotics need even n");
  const int m = n / 2;
  std::vector<cplx> two_is;
  for (cplx sj : p.s) two_is.push_back(2.0 * I * sj);
  cplx pa = m / a, pb = n / a;
  auto f11 = hyper_pq(std::span(&pa, 1), std::span(&pb, 1), two_is, a, ctrl);
  if (!f11.report.converged) throw ConvergenceError("1F1 series did not converge");
  for (double x : xs) {
    if (!(x > 0)) throw DomainError("x must be positive");
    AiryArgs args;
    args.alpha = a;
    for (cplx sj : p.s) args.s.push_back(-x + sj / std::sqrt(x));
    for (cplx fl : p.f) args.f.push_back(std::sqrt(x) * fl);
    cplx lhs = airy_mv(args, ctrl);
    cplx logr = -n * std::log(2 * std::numbers::pi) + std::lgamma(2.0 * m + 1) - 2 * std::lgamma(m + 1.0) +
                2 * log_gamma_const(2 / a, m) + (-m + m * (m + 1) / a) * std::log(2 * std::sqrt(x)) +
                double(r * m) * std::log(x);
    for (cplx fl : p.f) logr += double(m) * std::log(1.0 + fl * fl);
    for (cplx sj : p.s) logr -= I * sj;
    cplx rhs = std::exp(logr) * f11.value;
    rows.push_back({x, lhs, rhs, lhs / rhs});
  }
  return rows;
}

}  // namespace gbe
