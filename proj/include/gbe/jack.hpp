#pragma once

#include <atomic>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "gbe/partition.hpp"

namespace gbe {

using cplx = std::complex<double>;

class SymmetricPolynomial {
 public:
  explicit SymmetricPolynomial(int nvars = 0);

  static SymmetricPolynomial monomial(const Partition& mu, int nvars, cplx c = 1.0);

  int nvars() const { return nvars_; }
  // Largest weight among stored keys, 0 for the zero polynomial.
  int degree() const;
  const std::map<Partition, cplx>& coeffs() const { return coeffs_; }
  cplx coeff(const Partition& mu) const;

  // Throws DomainError when mu has more parts than variables.
  void add(const Partition& mu, cplx c);

  SymmetricPolynomial& operator+=(const SymmetricPolynomial& other);
  SymmetricPolynomial& operator*=(cplx c);

 private:
  int nvars_;
  std::map<Partition, cplx> coeffs_;
};

enum class OperatorKind { E, D };

SymmetricPolynomial apply_operator(OperatorKind kind, int k, const SymmetricPolynomial& p, double alpha);

SymmetricPolynomial jack_in_monomial(const Partition& kappa, double alpha, int nvars);

cplx monomial_value(const Partition& mu, std::span<const cplx> x);

cplx evaluate(const SymmetricPolynomial& p, std::span<const cplx> x);

double jack_at_ones(const Partition& kappa, double alpha, int nvars);

// All Jack polynomials of one degree in nvars variables, expanded over that
// degree's partitions (descending lexicographic, at most nvars parts).
struct JackShell {
  int degree = 0;
  std::vector<Partition> partitions;
  // rows[k] lists (index into partitions, coefficient) for P_{partitions[k]}.
  std::vector<std::vector<std::pair<int, double>>> rows;
  // Flattened distinct permutations of each partition padded to nvars.
  std::vector<std::vector<int>> orbits;
  std::vector<double> at_ones;
  std::vector<double> hook;
  std::vector<double> eigenvalue;
};

class JackTable {
 public:
  static constexpr int kMaxDegree = 160;

  static const JackTable& get(double alpha, int nvars);

  JackTable(double alpha, int nvars);
  ~JackTable();
  JackTable(const JackTable&) = delete;
  JackTable& operator=(const JackTable&) = delete;

  double alpha() const { return alpha_; }
  int nvars() const { return nvars_; }
  const JackShell& shell(int degree) const;

  // m_mu(x) for every partition in the shell; powers[i][e] = x_i^e.
  static void monomials(const JackShell& shell, const std::vector<std::vector<cplx>>& powers,
                        std::vector<cplx>& out);

 private:
  std::unique_ptr<JackShell> build(int degree) const;

  double alpha_;
  int nvars_;
  mutable std::mutex build_mutex_;
  mutable std::vector<std::atomic<const JackShell*>> shells_;
};

}  // namespace gbe
