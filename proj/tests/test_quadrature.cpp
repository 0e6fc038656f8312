#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gbe/quadrature.hpp"

using namespace gbe;

TEST_CASE("Gauss-Hermite moments") {
  for (int n : {5, 20, 60, 120}) {
    const auto& r = gauss_hermite(n);
    REQUIRE(r.nodes.size() == size_t(n));
    for (int k = 0; k < std::min(n, 30); ++k) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], 2 * k);
      CHECK(s == doctest::Approx(std::tgamma(k + 0.5)).epsilon(1e-11));
    }
  }
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  const auto& r = gauss_legendre(16);
  for (int k = 0; k < 31; ++k) {
    double s = 0;
    for (size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
    double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
    CHECK(s == doctest::Approx(exact).epsilon(1e-13).scale(1));
  }
}

TEST_CASE("Gauss-Jacobi beta integrals") {
  for (double a : {0.0, 0.5, 1.0}) {
    for (double b : {0.0, 1.0, 2.0, 4.0, 0.25}) {
      const auto& r = gauss_jacobi(24, a, b);
      for (int k = 0; k < 10; ++k) {
        // ∫ (1-x)^a (1+x)^{b+k} dx over [-1, 1]
        double exact = std::pow(2.0, a + b + k + 1) * std::tgamma(a + 1) * std::tgamma(b + k + 1) /
                       std::tgamma(a + b + k + 2);
        double s = 0;
        for (size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(1 + r.nodes[i], k);
        CHECK(s == doctest::Approx(exact).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("rules are cached") {
  CHECK(&gauss_hermite(30) == &gauss_hermite(30));
  CHECK(&gauss_jacobi(10, 0, 2) == &gauss_jacobi(10, 0, 2));
}
