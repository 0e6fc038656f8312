#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "gbe/hyper.hpp"
#include "gbe/log_complex.hpp"

namespace gbe {

struct EnsembleSpec {
  double beta = 2.0;
  int N = 1;
  // f_1..f_r; the remaining N - r entries are zero.
  std::vector<double> source;

  void validate() const;
  int rank() const { return static_cast<int>(source.size()); }
  std::vector<double> padded_source() const;
};

// log G_{β,N}.
double log_norm_constant(double beta, int N);
double norm_constant(double beta, int N);

// log Γ_{β,n}.
double log_gamma_const(double beta, int n);
double gamma_const(double beta, int n);

// Log of the eigenvalue density at x (length N), normalization included.
double log_density(const EnsembleSpec& spec, std::span<const double> x, const SeriesControl& ctrl = {});

// Quadrature oracle for N <= 3. resolution = nodes per dimension, 0 picks
// the default. Several argument lists share one pass over the grid.
cplx direct_K(const EnsembleSpec& spec, std::span<const cplx> s, int resolution = 0);
std::vector<cplx> direct_K_batch(const EnsembleSpec& spec, const std::vector<std::vector<cplx>>& s_lists,
                                 int resolution = 0);

struct McConfig {
  std::uint64_t seed = 1;
  long chain_length = 20000;
  long burn_in = 2000;
  // <= 0 picks a starting scale that burn-in then tunes.
  double proposal_scale = 0.0;
  int batches = 20;
  int chains = 1;

  void validate() const;
};

struct McResult {
  cplx estimate;
  double std_error = 0.0;
  double acceptance_rate = 0.0;
  double proposal_scale = 0.0;
};

McResult mc_estimate_K(const EnsembleSpec& spec, std::span<const cplx> s, const McConfig& cfg,
                       const SeriesControl& ctrl = {});

}  // namespace gbe
