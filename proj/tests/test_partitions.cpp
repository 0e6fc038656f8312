#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gbe/error.hpp"
#include "gbe/partition.hpp"

using namespace gbe;

TEST_CASE("construction and validation") {
  Partition p{3, 1, 0, 0};
  CHECK(p.length() == 2);
  CHECK(p.weight() == 4);
  CHECK(p[5] == 0);
  CHECK(p.str() == "(3,1)");
  CHECK(Partition{}.str() == "()");
  CHECK_THROWS_AS(Partition({1, 2}), DomainError);
  CHECK_THROWS_AS(Partition({2, -1}), DomainError);
  CHECK_THROWS_AS(Partition({2, 0, 1}), DomainError);
}

TEST_CASE("partition counts") {
  CHECK(enumerate_partitions(0, 3).size() == 1);
  CHECK(enumerate_partitions(10, 10).size() == 42);
  CHECK(enumerate_partitions(10, 2).size() == 6);
  auto ps = enumerate_partitions(6, 6);
  CHECK(ps.front() == Partition{6});
  CHECK(ps.back() == Partition{1, 1, 1, 1, 1, 1});
  for (size_t i = 1; i < ps.size(); ++i) CHECK(ps[i] < ps[i - 1]);
}

TEST_CASE("conjugate is an involution and swaps arm and leg") {
  for (int w = 1; w <= 9; ++w) {
    for (const auto& k : enumerate_partitions(w, w)) {
      auto c = conjugate(k);
      CHECK(c.weight() == w);
      CHECK(conjugate(c) == k);
      for (int i = 1; i <= k.length(); ++i)
        for (int j = 1; j <= k[i - 1]; ++j) {
          CHECK(arm_length(k, i, j) == leg_length(c, j, i));
        }
    }
  }
  CHECK(conjugate(Partition{3, 1}) == Partition{2, 1, 1});
}

TEST_CASE("dominance") {
  CHECK(dominance(Partition{3, 1}, Partition{2, 2}) == Dominance::Greater);
  CHECK(dominance(Partition{2, 2}, Partition{3, 1}) == Dominance::Less);
  CHECK(dominance(Partition{3, 3}, Partition{4, 1, 1}) == Dominance::Incomparable);
  CHECK(dominance(Partition{2, 1}, Partition{2, 1}) == Dominance::Equal);
  CHECK(dominated_by(Partition{1, 1, 1}, Partition{3}));
  CHECK_THROWS_AS(dominance(Partition{2}, Partition{1}), DomainError);
  // conjugation reverses dominance
  for (const auto& a : enumerate_partitions(7, 7))
    for (const auto& b : enumerate_partitions(7, 7))
      CHECK(dominated_by(a, b) == dominated_by(conjugate(b), conjugate(a)));
}

TEST_CASE("hook products") {
  // alpha = 1: both hooks equal the classical hook length product
  CHECK(hook_product(Partition{2, 1}, 1.0) == doctest::Approx(3.0));
  CHECK(hook_product(Partition{3}, 1.0) == doctest::Approx(6.0));
  CHECK_THROWS_AS(hook_product(Partition{1}, 0.0), DomainError);
  CHECK(hook_product(Partition{}, 2.0) == 1.0);
}

TEST_CASE("pochhammer row and box forms agree") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int w = 0; w <= 8; ++w)
    for (const auto& k : enumerate_partitions(w, 4)) {
      std::complex<double> x(u(rng), u(rng));
      double alpha = 0.3 + std::abs(u(rng));
      auto a = gen_pochhammer(x, k, alpha);
      auto b = gen_pochhammer_boxes(x, k, alpha);
      CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
    }
  // one row reduces to the rising factorial
  CHECK(std::abs(gen_pochhammer(2.5, Partition{3}, 1.7) - 2.5 * 3.5 * 4.5) < 1e-12);
  // (x)_(1,1) = x (x - 1/alpha)
  CHECK(std::abs(gen_pochhammer(2.0, Partition{1, 1}, 0.5) - 2.0 * 0.0) < 1e-12);
}
