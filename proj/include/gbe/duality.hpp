#pragma once

#include <span>

#include "gbe/ensemble.hpp"
#include "gbe/hyper.hpp"
#include "gbe/log_complex.hpp"

namespace gbe {

// Integration line Im y = shift. nodes = 0 and half_width = 0 select the
// automatic choices; auto_shift picks the saddle height when the integrand
// allows deformation.
struct ContourSpec {
  double shift = 0.0;
  int nodes = 0;
  double half_width = 0.0;
  bool auto_shift = true;

  void validate() const;
};

struct QuadratureReport {
  double shift = 0.0;
  double center = 0.0;
  double half_width = 0.0;
  int nodes = 0;
  double change = 0.0;
  double lost_digits = 0.0;
  bool real_line_chamber = false;
};

LogComplex duality_constant(double beta, int N, int n);

LogComplex K_via_duality(const EnsembleSpec& spec, std::span<const cplx> s, const ContourSpec& contour = {},
                         const SeriesControl& ctrl = {}, QuadratureReport* report = nullptr);

// e^{-p_2(s)/2} K_{β,N-l}(s; f).
LogComplex phi(const EnsembleSpec& spec, std::span<const cplx> s, int l, const ContourSpec& contour = {},
               const SeriesControl& ctrl = {}, QuadratureReport* report = nullptr);

}  // namespace gbe
