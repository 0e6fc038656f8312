#include "gbe/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>

#include "gbe/error.hpp"

namespace gbe {

namespace {

// Monic three-term recurrence p_{k+1} = (x - a_k) p_k - b_k p_{k-1}; mu0 is
// the total mass of the weight.
struct Recurrence {
  std::vector<double> a, b;
  double mu0;
};

GaussRule golub_welsch(const Recurrence& rc, int n) {
  Eigen::VectorXd diag(n), sub(std::max(n - 1, 1));
  for (int k = 0; k < n; ++k) diag[k] = rc.a[k];
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(rc.b[k]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(std::max(n - 1, 0)), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw InternalError("tridiagonal eigensolver failed");

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  std::vector<double> sb(n + 1);
  for (int k = 1; k <= n; ++k) sb[k] = std::sqrt(rc.b[k]);
  for (int i = 0; i < n; ++i) {
    double x = es.eigenvalues()[i];
    double sumsq = 0.0;
    for (int iter = 0; iter < 3; ++iter) {
      // Orthonormal polynomials and derivatives.
      double p0 = 0.0, p1 = 1.0 / std::sqrt(rc.mu0), d0 = 0.0, d1 = 0.0;
      sumsq = p1 * p1;
      for (int k = 0; k < n; ++k) {
        double p2 = ((x - rc.a[k]) * p1 - (k ? sb[k] : 0.0) * p0) / sb[k + 1];
        double d2 = (p1 + (x - rc.a[k]) * d1 - (k ? sb[k] : 0.0) * d0) / sb[k + 1];
        p0 = p1;
        p1 = p2;
        d0 = d1;
        d1 = d2;
        if (k + 1 < n) sumsq += p1 * p1;
      }
      if (iter < 2 && d1 != 0.0) x -= p1 / d1;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 1.0 / sumsq;
  }
  return rule;
}

Recurrence hermite_rc(int n) {
  Recurrence rc{std::vector<double>(n + 1, 0.0), std::vector<double>(n + 1, 0.0), std::sqrt(std::numbers::pi)};
  for (int k = 1; k <= n; ++k) rc.b[k] = k / 2.0;
  return rc;
}

Recurrence jacobi_rc(int n, double a, double b) {
  Recurrence rc{std::vector<double>(n + 1), std::vector<double>(n + 1, 0.0),
                std::exp((a + b + 1) * std::log(2.0) + std::lgamma(a + 1) + std::lgamma(b + 1) -
                         std::lgamma(a + b + 2))};
  for (int k = 0; k <= n; ++k) {
    double s = 2.0 * k + a + b;
    rc.a[k] = (k == 0) ? (b - a) / (a + b + 2) : (b * b - a * a) / (s * (s + 2));
    if (k == 0) continue;
    if (k == 1)
      rc.b[k] = 4 * (1 + a) * (1 + b) / ((2 + a + b) * (2 + a + b) * (3 + a + b));
    else
      rc.b[k] = 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1) * (s - 1));
  }
  return rc;
}

std::mutex cache_mutex;
std::map<std::tuple<int, int, double, double>, std::unique_ptr<GaussRule>>& cache() {
  static std::map<std::tuple<int, int, double, double>, std::unique_ptr<GaussRule>> rules;
  return rules;
}

const GaussRule& cached(int kind, int n, double a, double b) {
  if (n < 1) throw DomainError("Gauss rule needs at least one node");
  std::lock_guard lock(cache_mutex);
  auto& slot = cache()[{kind, n, a, b}];
  if (!slot) {
    Recurrence rc = kind == 0 ? hermite_rc(n) : jacobi_rc(n, a, b);
    slot = std::make_unique<GaussRule>(golub_welsch(rc, n));
  }
  return *slot;
}

}  // namespace

const GaussRule& gauss_hermite(int n) {
  if (n > 300) throw DomainError("Gauss-Hermite rule limited to 300 nodes");
  return cached(0, n, 0.0, 0.0);
}

const GaussRule& gauss_legendre(int n) { return cached(1, n, 0.0, 0.0); }

const GaussRule& gauss_jacobi(int n, double a, double b) {
  if (!(a > -1 && b > -1)) throw DomainError("Jacobi exponents must exceed -1");
  return cached(1, n, a, b);
}

}  // namespace gbe
