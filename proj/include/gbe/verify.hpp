#pragma once

#include <string>
#include <vector>

#include "gbe/duality.hpp"
#include "gbe/log_complex.hpp"

namespace gbe {

enum class Regime { Subcritical, Critical, Supercritical, Bulk };

const char* regime_name(Regime r);
Regime parse_regime(const std::string& name);

struct RegimeConfig {
  Regime regime = Regime::Subcritical;
  double beta = 2.0;
  int n = 1;
  int m = 0;
  // mu = 2 at the soft edge; > 2 supercritical.
  double mu = 2.0;
  double u = 0.0;
  std::vector<double> sbar;
  std::vector<double> pibar;
  // pi_{m+1..r}; r = m + pi_fixed.size().
  std::vector<double> pi_fixed;
  std::vector<int> N_list;
  // Supercritical only: weight e^{-p_2(s)/(ν²+1)} K instead of φ.
  bool hat = false;
  // Odd bulk only; empty means sbar + 0.25.
  std::vector<double> sbar_prime;

  void validate() const;
  int r() const { return m + static_cast<int>(pi_fixed.size()); }
  double nu() const;
  double sigma() const;
};

struct ScaledArgs {
  std::vector<cplx> s;
  std::vector<double> f;
};

// Physical (s, f) at size N. prime selects sbar_prime for the odd bulk pairing.
ScaledArgs apply_scaling(const RegimeConfig& cfg, int N, bool prime = false);

LogComplex constant_phi_sub(double beta, int N, int n);
LogComplex constant_phi_crit(double beta, int N, int n, int m);
LogComplex constant_phi_sup(double beta, int N, int n, int m, int r, double mu, double nu, double sigma);
// n even uses the 2m formula (l ignored); n odd the l-shifted one.
LogComplex constant_psi(double beta, int N, int n, int r, double u, int l);
double coeff_gamma_m(int m, double beta_prime);

struct StudyRow {
  int N = 0;
  int r = 0;
  LogComplex lhs;
  LogComplex rhs;
  double rel_dev = 0.0;
  // Odd bulk: deviation against -rhs.
  double rel_dev_flipped = 0.0;
  double quad_change = 0.0;
};

struct StudyTable {
  std::string theorem;
  bool has_rank = false;
  bool has_flipped = false;
  std::vector<StudyRow> rows;

  std::string to_csv() const;
};

StudyTable study_subcritical(const RegimeConfig& cfg);
StudyTable study_critical(const RegimeConfig& cfg);
StudyTable study_supercritical(const RegimeConfig& cfg);
StudyTable study_bulk(const RegimeConfig& cfg);
// r(N) = ceil(R N^a) sources, all equal to the first pi_fixed entry; a must
// stay below 1/3 (soft edge) or 1/2 (supercritical, bulk).
StudyTable study_growing_rank(const RegimeConfig& cfg, double a, double R);

StudyTable run_study(const RegimeConfig& cfg);

// theorem: sub, crit, sup, bulk or rank; rank runs study_growing_rank on cfg.
struct StudyRequest {
  std::string theorem = "sub";
  RegimeConfig cfg;
  double rank_exponent = 0.2;
  double rank_scale = 1.0;
};

StudyRequest default_request(const std::string& theorem);
StudyTable run_request(const StudyRequest& req);

// One π₁ of the phase-transition sweep (n = 1, r = 1). φ is probed at the
// soft edge (π₁ <= 1) or at the outlier location μ = π₁ + 1/π₁ (π₁ > 1) and
// held against each limit family there: subcritical Airy (1-π₁)Ai under
// Φ_sub, critical Ai_{1,1}(·; 0) under Φ_crit (both at the edge-rescaled
// argument), supercritical Gaussian with ν = π₁ (π₁ > 1 only, else NaN).
struct SweepRow {
  double pi1 = 0.0;
  Regime expected = Regime::Subcritical;
  double dev_sub = 0.0;
  double dev_crit = 0.0;
  double dev_sup = 0.0;

  double matching() const;
  // Smallest deviation among the other defined families.
  double best_wrong() const;
};

std::vector<SweepRow> trichotomy_sweep(double beta, int N, const std::vector<double>& pi1, double sbar);

double relative_deviation_or_inf(const LogComplex& lhs, const LogComplex& rhs);

}  // namespace gbe
