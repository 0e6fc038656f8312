#pragma once

#include <complex>
#include <span>
#include <vector>

#include "gbe/duality.hpp"
#include "gbe/hyper.hpp"

namespace gbe {

struct AiryArgs {
  std::vector<cplx> s;
  std::vector<cplx> f;
  double alpha = 1.0;
  ContourSpec contour;
};

// Classical Airy function and derivative through the shifted-contour integral.
cplx airy_ai(cplx z);
cplx airy_ai_prime(cplx z);

cplx airy_mv(const AiryArgs& args, const SeriesControl& ctrl = {}, QuadratureReport* report = nullptr);

cplx airy_mv_det_alpha1(std::span<const cplx> s, std::span<const cplx> f);

// nodes = 0 refines automatically.
cplx gauss_mv(std::span<const cplx> s, std::span<const cplx> f, double alpha, int nodes = 0,
              const SeriesControl& ctrl = {}, QuadratureReport* report = nullptr);

cplx gauss_mv_det_alpha1(std::span<const cplx> s, std::span<const cplx> f);

// G_{n,1}(a s; a z) with a = sqrt(2/alpha).
cplx gauss_mv_m1_hermite(std::span<const cplx> s, cplx z, double alpha);

cplx gauss_mv_series(std::span<const cplx> s, std::span<const cplx> f, double alpha);

enum class AirySide { Right, Left };

struct AsymptoticParams {
  AirySide side = AirySide::Right;
  double alpha = 1.0;
  // right side: f_1..f_k get the 1 + (2x^{3/2})^{-1/2} f scaling, the rest stay fixed.
  int k = 0;
  std::vector<cplx> s;
  std::vector<cplx> f;
};

struct AsymptoticRow {
  double x = 0.0;
  cplx lhs;
  cplx rhs;
  cplx ratio;
};

std::vector<AsymptoticRow> airy_asymptotics(const AsymptoticParams& params, std::span<const double> xs,
                                            const SeriesControl& ctrl = {});

}  // namespace gbe
