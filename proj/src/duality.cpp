#include "gbe/duality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gbe/error.hpp"
#include "integrate.hpp"

namespace gbe {

void ContourSpec::validate() const {
  if (!std::isfinite(shift)) throw DomainError("contour shift must be finite");
  if (nodes != 0 && nodes < 2) throw DomainError("contour nodes must be at least 2");
  if (!(half_width >= 0) || !std::isfinite(half_width)) throw DomainError("half_width must be positive");
}

LogComplex duality_constant(double beta, int N, int n) {
  if (!(beta > 0)) throw DomainError("beta must be positive");
  if (N < 1 || n < 1) throw DomainError("N and n must be positive");
  double lm = (n / 2.0 + n * (n - 1) / beta) * std::log(2.0) - log_gamma_const(4.0 / beta, n);
  return {lm, std::numbers::pi / 2 * ((static_cast<long>(n) * N) % 4)};
}

namespace {

struct Integrand {
  int N, r, n;
  double c;
  std::vector<double> f;
  std::vector<cplx> two_is;

  cplx one_variable(cplx y) const {
    cplx acc = -y * y;
    for (int k = 0; k < r; ++k) acc += std::log(cplx(0, f[k]) - y);
    if (N > r) acc += double(N - r) * std::log(-y);
    return acc;
  }
};

double saddle_point_shift(double sbar, int N) {
  double disc = sbar * sbar - 2.0 * N;
  double sg = sbar < 0 ? -1.0 : 1.0;
  return (sbar + sg * std::sqrt(std::max(0.0, disc))) / 2;
}

void auto_window(const Integrand& g, cplx sbar, double shift, double margin, double& center, double& hw) {
  double fmax = 0.0;
  for (double t : g.f) fmax = std::max(fmax, std::abs(t));
  const double X = 2 * std::sqrt(2.0 * g.N) + fmax + std::abs(sbar) + 15.0;
  auto prof = [&](double x) {
    cplx y(x, shift);
    return (g.one_variable(y) + 2.0 * cplx(0, 1) * sbar * y).real();
  };
  detail::profile_window(prof, X, margin, center, hw);
}

}  // namespace

LogComplex K_via_duality(const EnsembleSpec& spec, std::span<const cplx> s, const ContourSpec& contour,
                         const SeriesControl& ctrl, QuadratureReport* report) {
  spec.validate();
  contour.validate();
  ctrl.validate();
  const int n = static_cast<int>(s.size());
  if (n < 1) throw DomainError("need at least one spectral argument");
  if (n > 3) throw NotImplementedError("duality quadrature supports n <= 3");
  for (cplx v : s)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("spectral arguments must be finite");

  Integrand g{spec.N, spec.rank(), n, 4.0 / spec.beta, spec.source, {}};
  for (cplx v : s) g.two_is.push_back(2.0 * cplx(0, 1) * v);
  const bool analytic = n == 1 || detail::even_integer(g.c);
  if (!contour.auto_shift && contour.shift != 0.0 && !analytic)
    throw DomainError("contour shift needs n = 1 or an even integer Vandermonde exponent");

  cplx sbar = 0.0;
  for (cplx v : s) sbar += v;
  sbar /= double(n);
  double shift = 0.0;
  if (analytic) shift = contour.auto_shift ? saddle_point_shift(sbar.real(), spec.N) : contour.shift;

  double center, hw;
  auto_window(g, sbar, shift, n == 1 ? 1.1 : 1.25, center, hw);
  if (contour.half_width > 0) {
    hw = contour.half_width;
  }

  const double beta_half = spec.beta / 2;
  detail::IntegralResult res;
  QuadratureReport rep;
  if (analytic) {
    auto log_f = [&](std::span<const cplx> y) -> cplx {
      cplx acc = 0.0;
      for (int j = 0; j < n; ++j) acc += g.one_variable(y[j]);
      if (n == 1) return acc + g.two_is[0] * y[0];
      for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          cplx d = y[k] - y[j];
          if (d == cplx(0)) return -INFINITY;
          acc += g.c * std::log(d);
        }
      auto h = log_f00(y, g.two_is, beta_half, ctrl);
      if (h.report.cancellation > 1e8)
        throw ConvergenceError("hypergeometric factor lost precision; shift the contour or reduce the arguments");
      return acc + h.log_value;
    };
    const int start = n == 1 ? 64 : (n == 2 ? 32 : 16);
    const int maxn = n == 1 ? (1 << 15) : (n == 2 ? 1024 : 128);
    const double tol = n == 1 ? 1e-12 : (n == 2 ? 1e-10 : 1e-8);
    res = detail::trapezoid_nd(n, center, shift, hw, start, maxn, tol, contour.nodes, log_f);
  } else {
    auto log_f = [&](std::span<const double> x) -> cplx {
      std::vector<cplx> y(x.begin(), x.end());
      cplx acc = 0.0;
      for (int j = 0; j < n; ++j) acc += g.one_variable(y[j]);
      auto h = log_f00(y, g.two_is, beta_half, ctrl);
      if (h.report.cancellation > 1e8)
        throw ConvergenceError("hypergeometric factor lost precision; reduce the arguments");
      return acc + h.log_value;
    };
    res = detail::chamber_nd(n, g.c, center - hw, center + hw, 2 * hw, 24, 190, 1e-9, contour.nodes, log_f);
    rep.real_line_chamber = true;
  }
  rep.shift = shift;
  rep.center = center;
  rep.half_width = hw;
  rep.nodes = res.nodes;
  rep.change = res.change;
  rep.lost_digits = res.lost_digits;
  if (report) *report = rep;
  if (res.value.is_zero()) return {};
  if (contour.nodes == 0 && res.change > 1e-6)
    throw ConvergenceError("duality quadrature did not settle under node refinement");
  if (res.lost_digits > 13.0)
    throw ConvergenceError("duality quadrature cancelled to noise; use a shifted contour or smaller arguments");

  cplx p2 = 0.0;
  for (cplx v : s) p2 += v * v;
  return duality_constant(spec.beta, spec.N, n) * LogComplex::from_log(p2) * res.value;
}

LogComplex phi(const EnsembleSpec& spec, std::span<const cplx> s, int l, const ContourSpec& contour,
               const SeriesControl& ctrl, QuadratureReport* report) {
  spec.validate();
  if (l < 0 || spec.N - l < 1) throw DomainError("N - l must be at least 1");
  EnsembleSpec shifted = spec;
  shifted.N = spec.N - l;
  if (shifted.rank() > shifted.N) throw DomainError("source rank exceeds N - l");
  cplx p2 = 0.0;
  for (cplx v : s) p2 += v * v;
  return LogComplex::from_log(-0.5 * p2) * K_via_duality(shifted, s, contour, ctrl, report);
}

}  // namespace gbe
