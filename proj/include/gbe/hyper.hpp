#pragma once

#include <complex>
#include <span>
#include <vector>

namespace gbe {

using cplx = std::complex<double>;

struct SeriesControl {
  int max_degree = 60;
  double rel_tol = 1e-12;
  int stagnation_window = 3;

  void validate() const;
};

struct SeriesReport {
  int degree_reached = 0;
  double tail_estimate = 0.0;
  double max_shell = 0.0;
  // max shell magnitude over result magnitude; large values mean lost digits.
  double cancellation = 1.0;
  bool converged = false;
};

struct SeriesValue {
  cplx value;
  SeriesReport report;
};

SeriesValue hyper_pq(std::span<const cplx> a, std::span<const cplx> b, std::span<const cplx> x, double alpha,
                     const SeriesControl& ctrl = {});

SeriesValue hyper_pq_two_set(std::span<const cplx> a, std::span<const cplx> b, std::span<const cplx> x,
                             std::span<const cplx> y, double alpha, const SeriesControl& ctrl = {});

// ₀𝓕₀(x; a^k, b^{n-k}) = e^{b p_1(x)} ₁F₁(k/α; n/α; (a-b)x).
SeriesValue f00_clustered(std::span<const cplx> x, cplx a, cplx b, int k, double alpha,
                          const SeriesControl& ctrl = {});

// Same value through the shifted form, using x[ref] as the pivot; the
// ₁F₁ then runs over n-1 variables.
SeriesValue f00_clustered_shifted(std::span<const cplx> x, cplx a, cplx b, int k, double alpha,
                                  const SeriesControl& ctrl = {}, int ref = 0);

// Confluent hypergeometric M(a, b, z) of one variable, returned as a log.
// For b > a > 0 large |z| goes through the Euler integral with Gauss-Jacobi
// nodes; otherwise the Taylor series.
cplx log_kummer_m(double a, double b, cplx z);
inline cplx kummer_m(double a, double b, cplx z) { return std::exp(log_kummer_m(a, b, z)); }

struct LogF00 {
  cplx log_value;
  SeriesReport report;
};

// log ₀𝓕₀^(α)(x; y) through the cheapest exact route: n = 1, two-valued
// argument sets, the α = 1 determinant, then the plain two-set series.
LogF00 log_f00(std::span<const cplx> x, std::span<const cplx> y, double alpha, const SeriesControl& ctrl = {});

}  // namespace gbe
