#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <numbers>

#include "gbe/ensemble.hpp"
#include "gbe/error.hpp"
#include "gbe/limitfns.hpp"
#include "gbe/verify.hpp"

using namespace gbe;
using std::numbers::pi;

namespace {

RegimeConfig sub_cfg(double beta, std::vector<double> pis, double sbar) {
  RegimeConfig c;
  c.beta = beta;
  c.sbar = {sbar};
  c.pi_fixed = std::move(pis);
  c.N_list = {16, 64};
  return c;
}

double lin(const LogComplex& z) { return z.value().real(); }

}  // namespace

TEST_CASE("regime scalings") {
  RegimeConfig c = sub_cfg(2, {}, 0.0);
  auto a = apply_scaling(c, 64);
  CHECK(a.s[0].real() == doctest::Approx(std::sqrt(128.0)).epsilon(1e-15));

  c.sbar = {1.5};
  a = apply_scaling(c, 64);
  CHECK(a.s[0].real() == doctest::Approx(std::sqrt(128.0) + 1.5 / (std::sqrt(2.0) * 2.0)).epsilon(1e-14));

  RegimeConfig s;
  s.regime = Regime::Supercritical;
  s.mu = 2.5;
  s.m = 1;
  s.pibar = {0.5};
  s.sbar = {0.0};
  CHECK(s.nu() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s.sigma() * s.sigma() == doctest::Approx(4.0 / 3).epsilon(1e-14));
  a = apply_scaling(s, 100);
  CHECK(a.f[0] == doctest::Approx(std::sqrt(50.0) * (2.0 + s.sigma() * 0.5 / 10)).epsilon(1e-14));

  RegimeConfig b;
  b.regime = Regime::Bulk;
  b.n = 2;
  b.sbar = {0.3, -0.2};
  b.pi_fixed = {0.7};
  a = apply_scaling(b, 32);
  CHECK(a.s[0].real() == doctest::Approx(pi * 0.3 / 8).epsilon(1e-14));
  CHECK(a.s[1].real() == doctest::Approx(-pi * 0.2 / 8).epsilon(1e-14));
  CHECK(a.f[0] == doctest::Approx(4 * 0.7).epsilon(1e-14));

  RegimeConfig k;
  k.regime = Regime::Critical;
  k.m = 1;
  k.pibar = {2.0};
  k.sbar = {0.0};
  a = apply_scaling(k, 64);
  CHECK(a.f[0] == doctest::Approx(std::sqrt(32.0) * 1.5).epsilon(1e-14));
}

TEST_CASE("config validation") {
  RegimeConfig c = sub_cfg(2, {1.2}, 0.0);
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = sub_cfg(2, {0.3}, 0.0);
  c.mu = 2.5;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = sub_cfg(2, {0.3}, 0.0);
  c.sbar = {0.0, 1.0};
  CHECK_THROWS_AS(c.validate(), DomainError);
  RegimeConfig s;
  s.regime = Regime::Supercritical;
  s.mu = 2.0;
  s.sbar = {0.0};
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.mu = 2.5;
  s.pi_fixed = {2.5};
  CHECK_THROWS_AS(s.validate(), DomainError);
  RegimeConfig b;
  b.regime = Regime::Bulk;
  b.u = 1.0;
  b.sbar = {0.0};
  CHECK_THROWS_AS(b.validate(), DomainError);
  c = sub_cfg(2, {0.1, 0.1, 0.1}, 0.0);
  CHECK_THROWS_AS(apply_scaling(c, 2), DomainError);
  CHECK_THROWS_AS(study_critical(s), DomainError);
  CHECK_THROWS_AS(parse_regime("edge"), DomainError);
}

TEST_CASE("soft-edge constants") {
  for (double beta : {1.0, 2.0, 4.0}) {
    for (int n : {1, 2, 3}) {
      const int N0 = 10;
      double d = constant_phi_sub(beta, 2 * N0, n).log_mag - constant_phi_sub(beta, N0, n).log_mag;
      double e1 = n * (3.0 * N0 * beta + beta + 2.0 * n - 2) / (6 * beta);
      double e2 = n * (6.0 * N0 * beta + beta + 2.0 * n - 2) / (6 * beta);
      double expect = e2 * std::log(2.0 * N0) - e1 * std::log(1.0 * N0) - n * N0 / 2.0 - n * N0 / 2.0 * std::log(2.0);
      CHECK(d == doctest::Approx(expect).epsilon(1e-12));
      for (int m : {0, 1, 2}) {
        LogComplex r = constant_phi_crit(beta, 50, n, m) / constant_phi_sub(beta, 50, n);
        CHECK(r.log_mag == doctest::Approx(-n * m / 3.0 * std::log(50.0)).epsilon(1e-13));
        CHECK(std::cos(r.phase) == doctest::Approx((n * m) % 2 ? -1.0 : 1.0));
      }
    }
  }
  // n=1, β=2, N=10: π 10^{31/6} / (√(2π) e^5 2^4).
  double v = lin(constant_phi_sub(2, 10, 1));
  CHECK(v > 0);
  CHECK(v == doctest::Approx(pi * std::pow(10.0, 31.0 / 6) / (std::sqrt(2 * pi) * std::exp(5.0) * 16)).epsilon(1e-12));

  // β=2, n=1, m=1, r=1, μ=2.5: ν=2, σ=2/√3.
  double nu = 2, sg = 2 / std::sqrt(3.0), N = 12;
  double expect = -std::exp(N * (6.25 - 10 - 2) / 4) * std::pow(sg, 2.0) * std::pow(N, (N - 1) / 2) *
                  std::pow(2.0, -N / 2) * std::pow(nu, N - 1);
  CHECK(lin(constant_phi_sup(2, 12, 1, 1, 1, 2.5, nu, sg)) == doctest::Approx(expect).epsilon(1e-12));
  // n=2, m=0, r=0, β=1: σ^{2(4+1-2)} = σ^6.
  expect = std::exp(2 * N * (6.25 - 10 - 2) / 4) * std::pow(sg, 6.0) * std::pow(N, N) * std::pow(2.0, -N) *
           std::pow(nu, 2 * N);
  CHECK(lin(constant_phi_sup(1, 12, 2, 0, 0, 2.5, nu, sg)) == doctest::Approx(expect).epsilon(1e-12));
  CHECK_THROWS_AS(constant_phi_sup(2, 12, 1, 2, 1, 2.5, nu, sg), DomainError);
}

TEST_CASE("bulk constants") {
  const double N = 20;
  // β=2, n=2, u=0: 2^{2-(N+1)} N^{1+N} e^{-N}.
  double lm = constant_psi(2, 20, 2, 0, 0.0, 0).log_mag;
  CHECK(lm == doctest::Approx((1 - N) * std::log(2.0) + (1 + N) * std::log(N) - N).epsilon(1e-13));
  // β=2, n=1, u=0: 2i 2^{-(N+1-l)/2} N^{(N-l)/2} e^{-N/2}.
  for (int l : {0, 1}) {
    LogComplex p = constant_psi(2, 20, 1, 0, 0.0, l);
    double e = std::log(2.0) - (N + 1 - l) / 2 * std::log(2.0) + (N - l) / 2 * std::log(N) - N / 2;
    CHECK(p.log_mag == doctest::Approx(e).epsilon(1e-13));
    CHECK(p.phase == doctest::Approx(pi / 2));
  }
  // β' enters only through 4/β: β=1 at n=2 equals the β'=4 re-keying.
  double lm4 = constant_psi(1, 20, 2, 1, 0.3, 0).log_mag;
  double w = 0.5 * std::log(1 - 0.09);
  CHECK(lm4 == doctest::Approx((4 - N - 1) * std::log(2.0) + (2 + N) * std::log(N) - N + (4 - 1 + 2) * w)
                   .epsilon(1e-13));
  // n=3 (m=2): C(3,2) Γ_{β',1}Γ_{β',2}/Γ_{β',3} enters; at β'=2 Γ_{2,k} = (2π)^{k/2} Π j!.
  double pre = constant_psi(2, 10, 3, 0, 0.0, 0).log_mag - constant_psi(2, 10, 3, 0, 0.0, 1).log_mag;
  CHECK(pre == doctest::Approx(-1.5 * std::log(2.0) + 1.5 * std::log(10.0)).epsilon(1e-12));
  CHECK_THROWS_AS(constant_psi(2, 10, 1, 0, 1.0, 0), DomainError);
  CHECK_THROWS_AS(constant_psi(2, 10, 1, 0, 0.0, 2), DomainError);

  CHECK(coeff_gamma_m(1, 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(coeff_gamma_m(1, 4) == doctest::Approx(1.0 / 6).epsilon(1e-14));
  for (int m = 1; m <= 4; ++m)
    for (double bp : {1.0, 2.0, 4.0}) CHECK(coeff_gamma_m(m, bp) > 0);
  CHECK_THROWS_AS(coeff_gamma_m(0, 2), DomainError);
}

TEST_CASE("subcritical and critical studies") {
  RegimeConfig c = sub_cfg(2, {0.5}, 0.0);
  StudyTable t = study_subcritical(c);
  REQUIRE(t.rows.size() == 2);
  CHECK(lin(t.rows[0].rhs) == doctest::Approx(0.5 * boost::math::airy_ai(0.0)).epsilon(1e-10));
  CHECK(lin(t.rows[0].rhs) == doctest::Approx(0.177514).epsilon(1e-5));
  CHECK(t.rows[1].rel_dev < t.rows[0].rel_dev);

  c = sub_cfg(2, {}, -0.7);
  t = study_subcritical(c);
  CHECK(lin(t.rows[1].rhs) == doctest::Approx(boost::math::airy_ai(-0.7)).epsilon(1e-10));
  CHECK(t.rows[1].rel_dev < 0.05);

  c = sub_cfg(1, {-1.0}, 0.4);
  t = study_subcritical(c);
  CHECK(lin(t.rows[1].rhs) == doctest::Approx(2 * boost::math::airy_ai(0.4)).epsilon(1e-10));

  RegimeConfig k;
  k.regime = Regime::Critical;
  k.m = 1;
  k.pibar = {0.0};
  k.sbar = {0.0};
  k.N_list = {16, 64};
  t = study_critical(k);
  CHECK(lin(t.rows[0].rhs) == doctest::Approx(boost::math::airy_ai_prime(0.0)).epsilon(1e-10));
  CHECK(t.rows[1].rel_dev < t.rows[0].rel_dev);
  CHECK(t.rows[1].rel_dev < 0.01);

  k.pibar = {2.0};
  t = study_critical(k);
  CHECK(t.rows[1].rel_dev < t.rows[0].rel_dev);

  c = sub_cfg(2, {0.3}, 0.2);
  StudyTable a = study_subcritical(c);
  StudyTable b = study_critical(c);
  CHECK(a.to_csv() == b.to_csv());
}

TEST_CASE("supercritical study and weighted mode") {
  RegimeConfig s;
  s.regime = Regime::Supercritical;
  s.mu = 2.5;
  s.m = 1;
  s.pibar = {0.0};
  s.sbar = {0.6};
  s.N_list = {16, 64, 256};
  StudyTable t = study_supercritical(s);
  const double sg2 = 4.0 / 3;
  CHECK(lin(t.rows[0].rhs) == doctest::Approx(std::exp(-0.18) * -0.6 * std::exp(0.36 / (4 * sg2))).epsilon(1e-9));
  CHECK(t.rows[2].rel_dev < t.rows[1].rel_dev);
  CHECK(t.rows[2].rel_dev < 0.05);

  s.m = 0;
  s.pibar = {};
  s.pi_fixed = {0.5};
  t = study_supercritical(s);
  CHECK(lin(t.rows[0].rhs) == doctest::Approx(1.5 * std::exp(-0.18) * std::exp(0.36 / (4 * sg2))).epsilon(1e-9));
  CHECK(t.rows[2].rel_dev < 0.05);

  s.hat = true;
  StudyTable h = study_supercritical(s);
  CHECK(h.theorem == "sup_hat");
  CHECK(h.rows[2].rel_dev < h.rows[1].rel_dev);
  CHECK(h.rows[2].rel_dev < 0.05);
}

TEST_CASE("bulk study") {
  RegimeConfig b;
  b.regime = Regime::Bulk;
  b.n = 2;
  b.sbar = {0.0, 0.0};
  b.N_list = {16, 64};
  StudyTable t = study_bulk(b);
  CHECK(lin(t.rows[0].rhs) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t.rows[1].rel_dev < t.rows[0].rel_dev);
  b.pi_fixed = {1.0};
  t = study_bulk(b);
  CHECK(lin(t.rows[0].rhs) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(t.rows[1].rel_dev < 0.05);

  RegimeConfig o;
  o.regime = Regime::Bulk;
  o.n = 1;
  o.sbar = {0.1};
  o.N_list = {16, 64};
  t = study_bulk(o);
  CHECK(t.has_flipped);
  // n=1: (1/2i)(e^{iπΔ}e^{2iπs̄}e^{-2iπs̄'} - c.c.) = sin(π(s̄ - s̄')).
  CHECK(lin(t.rows[0].rhs) == doctest::Approx(std::sin(-0.25 * pi)).epsilon(1e-12));
  CHECK(t.rows[1].rel_dev_flipped < t.rows[0].rel_dev_flipped);
  CHECK(t.rows[1].rel_dev_flipped < 0.01);
  CHECK(t.to_csv().find("rel_dev_sign_flipped") != std::string::npos);
}

TEST_CASE("growing rank") {
  RegimeConfig c = sub_cfg(2, {-0.25}, -1.0);
  StudyTable fixed = study_subcritical(c);
  StudyTable a0 = study_growing_rank(c, 0.0, 1.0);
  REQUIRE(a0.rows.size() == fixed.rows.size());
  for (size_t i = 0; i < a0.rows.size(); ++i) CHECK(a0.rows[i].rel_dev == fixed.rows[i].rel_dev);

  StudyTable g = study_growing_rank(c, 0.2, 1.0);
  CHECK(g.rows[0].r == 2);
  CHECK(g.rows[1].r == 3);
  CHECK(g.rows[1].rhs.log_mag == doctest::Approx(3 * std::log(1.25) + std::log(boost::math::airy_ai(-1.0))));
  CHECK(g.rows[1].rel_dev < 0.05);
  CHECK_THROWS_AS(study_growing_rank(c, 0.4, 1.0), DomainError);

  RegimeConfig b;
  b.regime = Regime::Bulk;
  b.n = 2;
  b.sbar = {0.1, 0.2};
  b.pi_fixed = {0.5};
  b.N_list = {16};
  StudyTable gb = study_growing_rank(b, 0.3, 1.0);
  CHECK(gb.rows[0].r == 3);
  CHECK(gb.rows[0].rel_dev < 0.1);
}

TEST_CASE("phase-transition sweep") {
  auto rows = trichotomy_sweep(2.0, 64, {0.5, 1.0, 1.5}, -1.0);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].expected == Regime::Subcritical);
  CHECK(rows[1].expected == Regime::Critical);
  CHECK(rows[2].expected == Regime::Supercritical);
  CHECK(std::isnan(rows[0].dev_sup));
  CHECK(std::isinf(rows[1].dev_sub));
  for (const auto& r : rows) CHECK(r.best_wrong() >= 3 * r.matching());
}

TEST_CASE("csv layout") {
  RegimeConfig c = sub_cfg(2, {0.5}, 0.0);
  c.N_list = {16};
  std::string csv = study_subcritical(c).to_csv();
  CHECK(csv.rfind("N,lhs_log_mag,lhs_phase,rhs_log_mag,rhs_phase,rel_dev\n16,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}
