#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gbe/error.hpp"
#include "gbe/jack.hpp"

using namespace gbe;

namespace {

bool close(cplx a, cplx b, double tol = 1e-11) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

double eigenvalue(const Partition& k, double alpha, int n) {
  double v = 0;
  for (int i = 0; i < k.length(); ++i) v += k[i] * (k[i] - 1.0) - 2.0 / alpha * i * k[i];
  return v + 2.0 / alpha * (n - 1) * k.weight();
}

}  // namespace

TEST_CASE("low-degree Jack polynomials") {
  for (double alpha : {0.5, 1.0, 2.0, 3.7}) {
    auto p2 = jack_in_monomial(Partition{2}, alpha, 3);
    CHECK(close(p2.coeff(Partition{2}), 1.0));
    CHECK(close(p2.coeff(Partition{1, 1}), 2.0 / (1 + alpha)));
    auto p21 = jack_in_monomial(Partition{2, 1}, alpha, 3);
    CHECK(close(p21.coeff(Partition{2, 1}), 1.0));
    CHECK(close(p21.coeff(Partition{1, 1, 1}), 6.0 / (alpha + 2)));
    CHECK(close(p21.coeff(Partition{3}), 0.0));
  }
  // alpha = 1 gives Schur functions: s_(2,2) has m_211 coefficient 1, m_1111 coefficient 2
  auto s22 = jack_in_monomial(Partition{2, 2}, 1.0, 4);
  CHECK(close(s22.coeff(Partition{2, 1, 1}), 1.0));
  CHECK(close(s22.coeff(Partition{1, 1, 1, 1}), 2.0));
}

TEST_CASE("Jack polynomials are eigenfunctions of D_2") {
  for (double alpha : {0.5, 1.0, 2.0, 1.3}) {
    for (int n : {2, 3, 4}) {
      for (int w = 1; w <= 6; ++w) {
        for (const auto& k : enumerate_partitions(w, n)) {
          auto p = jack_in_monomial(k, alpha, n);
          auto dp = apply_operator(OperatorKind::D, 2, p, alpha);
          auto expect = p;
          expect *= eigenvalue(k, alpha, n);
          for (const auto& mu : enumerate_partitions(w, n)) CHECK(close(dp.coeff(mu), expect.coeff(mu), 1e-9));
        }
      }
    }
  }
}

TEST_CASE("triangularity and value at ones") {
  for (double alpha : {0.5, 2.0}) {
    for (const auto& k : enumerate_partitions(6, 4)) {
      auto p = jack_in_monomial(k, alpha, 4);
      for (const auto& [mu, c] : p.coeffs()) CHECK(dominated_by(mu, k));
      std::vector<cplx> ones(4, 1.0);
      CHECK(close(evaluate(p, ones), jack_at_ones(k, alpha, 4), 1e-10));
    }
  }
}

TEST_CASE("stability under adding a zero variable") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (const auto& k : enumerate_partitions(5, 3)) {
    auto p3 = jack_in_monomial(k, 1.5, 3);
    auto p4 = jack_in_monomial(k, 1.5, 4);
    std::vector<cplx> x = {u(rng), u(rng), u(rng)};
    std::vector<cplx> x0 = {x[0], x[1], x[2], 0.0};
    CHECK(close(evaluate(p3, x), evaluate(p4, x0), 1e-10));
    std::vector<cplx> xp = {x[2], x[0], x[1]};
    CHECK(close(evaluate(p3, x), evaluate(p3, xp), 1e-10));
  }
}

TEST_CASE("operators on small examples") {
  for (double alpha : {0.5, 1.0, 2.0}) {
    auto m11 = SymmetricPolynomial::monomial(Partition{1, 1}, 2);
    auto d0 = apply_operator(OperatorKind::D, 0, m11, alpha);
    CHECK(close(d0.coeff(Partition{}), -2.0 / alpha));
    CHECK(d0.coeffs().size() == 1);
  }
  auto p = jack_in_monomial(Partition{3, 1}, 0.7, 3);
  auto e1 = apply_operator(OperatorKind::E, 1, p, 0.7);
  for (const auto& [mu, c] : p.coeffs()) CHECK(close(e1.coeff(mu), 4.0 * c));
  // E_0 m_2 = 2 m_1
  auto e0 = apply_operator(OperatorKind::E, 0, SymmetricPolynomial::monomial(Partition{2}, 3), 1.0);
  CHECK(close(e0.coeff(Partition{1}), 2.0));
  CHECK_THROWS_AS(apply_operator(OperatorKind::E, -1, p, 1.0), NotImplementedError);
  CHECK_THROWS_AS(SymmetricPolynomial(2).add(Partition{1, 1, 1}, 1.0), DomainError);
}

TEST_CASE("table shells match direct expansion") {
  const auto& t = JackTable::get(0.8, 3);
  const auto& sh = t.shell(5);
  for (size_t K = 0; K < sh.partitions.size(); ++K) {
    auto p = jack_in_monomial(sh.partitions[K], 0.8, 3);
    for (const auto& [i, c] : sh.rows[K]) CHECK(close(p.coeff(sh.partitions[i]), c));
  }
  CHECK(&JackTable::get(0.8, 3) == &t);
}
