#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gbe/duality.hpp"
#include "gbe/ensemble.hpp"
#include "gbe/error.hpp"

using namespace gbe;
using std::numbers::pi;

namespace {

double hermite(int n, double x) {
  double h0 = 1, h1 = 2 * x;
  if (n == 0) return h0;
  for (int k = 1; k < n; ++k) {
    double h2 = 2 * x * h1 - 2 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

}  // namespace

TEST_CASE("duality constant") {
  for (double beta : {1.0, 2.0, 4.0})
    for (int N : {1, 2, 5})
      for (int n : {1, 2}) {
        LogComplex d = duality_constant(beta, N, n);
        double lm = (n / 2.0 + n * (n - 1) / beta) * std::log(2.0) - log_gamma_const(4 / beta, n);
        CHECK(d.log_mag == doctest::Approx(lm).epsilon(1e-13));
        cplx phase = std::polar(1.0, d.phase), want = std::pow(cplx(0, 1), n * N);
        CHECK(std::abs(phase - want) < 1e-12);
      }
}

TEST_CASE("sourceless n=1 is the monic Hermite polynomial for every beta") {
  for (double beta : {1.0, 2.0, 4.0, 0.7})
    for (int N : {1, 4, 10})
      for (double s : {-1.3, 0.2, 2.5}) {
        cplx sv[1] = {s};
        LogComplex k = K_via_duality({beta, N, {}}, sv);
        double want = hermite(N, s) / std::pow(2.0, N);
        CHECK(k.value().real() == doctest::Approx(want).epsilon(1e-9));
      }
}

TEST_CASE("duality matches the direct oracle") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  for (double beta : {1.0, 2.0, 4.0})
    for (int N : {1, 2})
      for (int n : {1, 2}) {
        std::vector<double> f;
        for (int r = 0; r < N; ++r) f.push_back(u(rng) / 2);
        std::vector<cplx> s(n);
        for (auto& v : s) v = u(rng);
        EnsembleSpec spec{beta, N, f};
        cplx direct = direct_K(spec, s);
        QuadratureReport rep;
        LogComplex dual = K_via_duality(spec, s, {}, {}, &rep);
        CHECK(std::abs(dual.value() - direct) <= 1e-8 * std::abs(direct));
        CHECK(rep.change < 1e-6);
      }
}

TEST_CASE("node refinement and contour shift leave the value alone") {
  EnsembleSpec spec{2.0, 12, {1.1, -0.4}};
  cplx s[2] = {0.5, 1.4};
  QuadratureReport rep;
  LogComplex a = K_via_duality(spec, s, {}, {}, &rep);
  ContourSpec fixed{rep.shift, rep.nodes * 2, 0.0, false};
  LogComplex b = K_via_duality(spec, s, fixed);
  CHECK(relative_deviation(b, a) < 1e-9);
  ContourSpec moved{rep.shift + 0.3, 0, 0.0, false};
  CHECK(relative_deviation(K_via_duality(spec, s, moved), a) < 1e-8);
}

TEST_CASE("large N stays in log space") {
  cplx s[1] = {std::sqrt(2.0 * 400) + 0.1};
  LogComplex k = K_via_duality({2.0, 400, {}}, s);
  CHECK(std::isfinite(k.log_mag));
  CHECK(k.log_mag > 700);
}

TEST_CASE("phi shifts N and carries the Gaussian weight") {
  EnsembleSpec spec{2.0, 6, {0.8}};
  cplx s[1] = {0.7};
  LogComplex p = phi(spec, s, 1);
  LogComplex k = K_via_duality({2.0, 5, {0.8}}, s);
  CHECK(relative_deviation(p, k * LogComplex(-0.245, 0.0)) < 1e-12);
  CHECK_THROWS_AS(phi(spec, s, 6), DomainError);
  CHECK_THROWS_AS(phi({2.0, 1, {0.5}}, s, 1), DomainError);
}

TEST_CASE("argument checks") {
  cplx s4[4] = {0, 0.1, 0.2, 0.3};
  CHECK_THROWS_AS(K_via_duality({2.0, 3, {}}, s4), NotImplementedError);
  cplx s[1] = {0.0};
  ContourSpec bad{0.0, 1, 0.0, true};
  CHECK_THROWS_AS(K_via_duality({2.0, 3, {}}, s, bad), DomainError);
  cplx nan[1] = {std::nan("")};
  CHECK_THROWS_AS(K_via_duality({2.0, 3, {}}, nan), DomainError);
}
