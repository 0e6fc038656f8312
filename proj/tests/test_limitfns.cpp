#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/special_functions/airy.hpp>
#include <cmath>

#include "gbe/error.hpp"
#include "gbe/limitfns.hpp"

using namespace gbe;

namespace {

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::max(1e-300, std::abs(b)); }

}  // namespace

TEST_CASE("classical Airy against the oracle") {
  for (double x : {-6.0, -2.5, -0.3, 0.0, 0.8, 3.0, 6.0}) {
    CHECK(close(airy_ai(x), boost::math::airy_ai(x), 1e-10));
    CHECK(close(airy_ai_prime(x), boost::math::airy_ai_prime(x), 1e-10));
  }
  AiryArgs a;
  a.s = {0.0};
  CHECK(std::abs(airy_mv(a) - 0.355028053888) < 1e-8);
}

TEST_CASE("one-variable Airy family") {
  AiryArgs a;
  a.s = {0.4};
  a.f = {0.0};
  CHECK(close(airy_mv(a), boost::math::airy_ai_prime(0.4), 1e-10));
  a.f = {1.5};
  CHECK(close(airy_mv(a), boost::math::airy_ai_prime(0.4) + 1.5 * boost::math::airy_ai(0.4), 1e-10));
  a.s = {0.0};
  a.f = {0.0};
  CHECK(airy_mv(a).real() == doctest::Approx(-0.258819403792807).epsilon(1e-9));
}

TEST_CASE("Airy quadrature and determinant paths agree") {
  std::vector<std::vector<cplx>> ss = {{-0.6, 0.9}, {0.2, 1.3}};
  std::vector<std::vector<cplx>> fs = {{}, {0.4}, {0.4, -0.9}};
  for (const auto& s : ss)
    for (const auto& f : fs) {
      AiryArgs a{s, f, 1.0, {}};
      CHECK(close(airy_mv(a), airy_mv_det_alpha1(s, f), 1e-7));
    }
  AiryArgs three{{-0.5, 0.3, 1.0}, {0.2}, 1.0, {}};
  CHECK(close(airy_mv(three), airy_mv_det_alpha1(three.s, three.f), 1e-7));
}

TEST_CASE("Gaussian paths agree") {
  std::vector<cplx> s = {0.3, -0.8};
  for (double alpha : {0.5, 1.0, 2.0}) {
    std::vector<cplx> f = {0.7};
    cplx series = gauss_mv_series(s, f, alpha);
    const double a = std::sqrt(2 / alpha);
    std::vector<cplx> sa = {s[0] / a, s[1] / a};
    CHECK(close(gauss_mv_m1_hermite(sa, f[0] / a, alpha), series, 1e-10));
    if (alpha == 1.0 || alpha == 2.0 || alpha == 0.5) CHECK(close(gauss_mv(s, f, alpha), series, 1e-8));
  }
  std::vector<cplx> f2 = {0.7, -0.2};
  CHECK(close(gauss_mv(s, f2, 1.0), gauss_mv_det_alpha1(s, f2), 1e-8));
  CHECK(close(gauss_mv_series(s, f2, 1.0), gauss_mv_det_alpha1(s, f2), 1e-10));
  std::vector<cplx> zero = {0.0, 0.0};
  CHECK(close(gauss_mv(zero, {}, 1.0), 1.0, 1e-10));
  std::vector<cplx> one = {0.4};
  std::vector<cplx> fz = {0.0};
  CHECK(close(gauss_mv(one, fz, 1.0), std::exp(-0.08) * -0.4, 1e-10));
}

TEST_CASE("argument checks") {
  AiryArgs a;
  CHECK_THROWS_AS(airy_mv(a), DomainError);
  a.s = {0.1, 0.2};
  a.alpha = 0.7;
  CHECK_THROWS_AS(airy_mv(a), NotImplementedError);
  std::vector<cplx> s = {0.1, 0.1};
  CHECK_THROWS_AS(airy_mv_det_alpha1(s, {}), DomainError);
  std::vector<cplx> f(7, 0.1);
  CHECK_THROWS_AS(gauss_mv_series(s, f, 1.0), DomainError);
}

TEST_CASE("right-side Airy asymptotics approach one") {
  AsymptoticParams p;
  p.s = {0.0};
  double xs[3] = {4, 9, 16};
  auto rows = airy_asymptotics(p, xs);
  REQUIRE(rows.size() == 3);
  double d0 = std::abs(rows[0].ratio - 1.0), d2 = std::abs(rows[2].ratio - 1.0);
  CHECK(d2 < d0);
  CHECK(d2 < 0.05);
}
