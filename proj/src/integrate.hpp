#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "gbe/log_complex.hpp"

namespace gbe::detail {

using cplx = std::complex<double>;

struct IntegralResult {
  LogComplex value;
  int nodes = 0;           // per dimension at the final level
  double change = 0.0;     // relative change against the previous level
  double lost_digits = 0;  // log10 of (largest weighted term / |result|)
};

// Tensor trapezoid over the lines center + iδ + [-hw, hw] in each variable.
// log_f returns the complex log of the integrand at w (−inf real part for 0).
// With fixed_nodes > 0 a single level is computed plus its half for the
// change estimate. Points whose log_bound falls 46 below the largest bound
// on the grid are skipped. Otherwise nodes grow by half from start_nodes until the change
// drops below tol or max_nodes is reached.
IntegralResult trapezoid_nd(int dim, double center, double shift, double half_width, int start_nodes,
                            int max_nodes, double tol, int fixed_nodes,
                            const std::function<cplx(std::span<const cplx>)>& log_f,
                            const std::function<double(std::span<const cplx>)>& log_bound = nullptr);

// ∫_{R^n} F(x) |Δ(x)|^c dx for symmetric F, as n! times the integral over
// x_1 < ... < x_n. The lowest point runs over [lo, hi] with Gauss-Legendre
// nodes and each gap over [0, gap_max] with Gauss-Jacobi nodes for g^c.
// log_f receives ordered points and must not include the Vandermonde.
// Several integrands sharing one density: log_f fills out[0..outputs) and
// every output gets the same node set. change is the worst over outputs.
std::vector<IntegralResult> chamber_multi(int dim, double c, double lo, double hi, double gap_max, int outputs,
                                          int start_nodes, int max_nodes, double tol, int fixed_nodes,
                                          const std::function<void(std::span<const double>, std::span<cplx>)>& log_f,
                                          const std::function<double(std::span<const double>)>& log_bound = nullptr);

IntegralResult chamber_nd(int dim, double c, double lo, double hi, double gap_max, int start_nodes, int max_nodes,
                          double tol, int fixed_nodes, const std::function<cplx(std::span<const double>)>& log_f,
                          const std::function<double(std::span<const double>)>& log_bound = nullptr);

// Range on [-X, X] where prof stays within 45 of its maximum, widened by
// margin plus one unit.
void profile_window(const std::function<double(double)>& prof, double X, double margin, double& center,
                    double& half_width);

bool even_integer(double c);

}  // namespace gbe::detail
