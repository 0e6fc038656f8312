#include "gbe/jack.hpp"

#include <algorithm>
#include <cmath>
#include <shared_mutex>

#include "gbe/error.hpp"

namespace gbe {

namespace {

using Image = std::map<std::vector<int>, double>;

std::vector<int> padded(const Partition& mu, int n) {
  std::vector<int> e(n, 0);
  for (int i = 0; i < mu.length(); ++i) e[i] = mu[i];
  return e;
}

template <class F>
void for_each_permutation(const Partition& mu, int n, F&& fn) {
  auto a = padded(mu, n);
  std::sort(a.begin(), a.end());
  do {
    fn(a);
  } while (std::next_permutation(a.begin(), a.end()));
}

// Image of m_mu under E_k or D_k, keyed by the sorted exponent vector. The
// result is symmetric, so reading it off at sorted compositions suffices.
Image monomial_image(OperatorKind kind, int k, const Partition& mu, int n, double alpha) {
  Image img;
  std::vector<int> e(n);
  auto put = [&](double c) {
    if (std::is_sorted(e.begin(), e.end(), std::greater<int>())) img[e] += c;
  };
  for_each_permutation(mu, n, [&](const std::vector<int>& a) {
    e = a;
    for (int i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      if (kind == OperatorKind::E) {
        e[i] = a[i] + k - 1;
        put(a[i]);
      } else if (a[i] >= 2) {
        e[i] = a[i] + k - 2;
        put(double(a[i]) * (a[i] - 1));
      }
      e[i] = a[i];
    }
    if (kind == OperatorKind::E) return;
    for (int i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      double c = 2.0 / alpha * a[i];
      int A = a[i] + k - 1;
      for (int j = i + 1; j < n; ++j) {
        int B = a[j];
        if (A > B) {
          for (int t = 0; t < A - B; ++t) {
            e[i] = B + t;
            e[j] = A - 1 - t;
            put(c);
          }
        } else if (A < B) {
          for (int t = 0; t < B - A; ++t) {
            e[i] = A + t;
            e[j] = B - 1 - t;
            put(-c);
          }
        }
        e[i] = a[i];
        e[j] = a[j];
      }
    }
  });
  return img;
}

std::shared_mutex registry_mutex;
std::map<std::pair<double, int>, std::unique_ptr<JackTable>>& registry() {
  static std::map<std::pair<double, int>, std::unique_ptr<JackTable>> tables;
  return tables;
}

}  // namespace

SymmetricPolynomial::SymmetricPolynomial(int nvars) : nvars_(nvars) {
  if (nvars < 0) throw DomainError("negative variable count");
}

SymmetricPolynomial SymmetricPolynomial::monomial(const Partition& mu, int nvars, cplx c) {
  SymmetricPolynomial p(nvars);
  p.add(mu, c);
  return p;
}

int SymmetricPolynomial::degree() const {
  int d = 0;
  for (const auto& [mu, c] : coeffs_) d = std::max(d, mu.weight());
  return d;
}

cplx SymmetricPolynomial::coeff(const Partition& mu) const {
  auto it = coeffs_.find(mu);
  return it == coeffs_.end() ? cplx(0) : it->second;
}

void SymmetricPolynomial::add(const Partition& mu, cplx c) {
  if (mu.length() > nvars_) throw DomainError("monomial " + mu.str() + " has more parts than variables");
  if (c == cplx(0)) return;
  auto [it, inserted] = coeffs_.emplace(mu, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cplx(0)) coeffs_.erase(it);
  }
}

SymmetricPolynomial& SymmetricPolynomial::operator+=(const SymmetricPolynomial& other) {
  if (other.nvars_ != nvars_) throw DomainError("variable count mismatch");
  for (const auto& [mu, c] : other.coeffs_) add(mu, c);
  return *this;
}

SymmetricPolynomial& SymmetricPolynomial::operator*=(cplx c) {
  if (c == cplx(0)) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [mu, v] : coeffs_) v *= c;
  return *this;
}

SymmetricPolynomial apply_operator(OperatorKind kind, int k, const SymmetricPolynomial& p, double alpha) {
  if (k < 0) throw NotImplementedError("operator index must be non-negative");
  if (kind == OperatorKind::D && !(alpha > 0)) throw DomainError("alpha must be positive");
  SymmetricPolynomial out(p.nvars());
  for (const auto& [mu, c] : p.coeffs()) {
    for (const auto& [e, v] : monomial_image(kind, k, mu, p.nvars(), alpha)) {
      if (v != 0.0) out.add(Partition(e), c * v);
    }
  }
  return out;
}

cplx monomial_value(const Partition& mu, std::span<const cplx> x) {
  int n = static_cast<int>(x.size());
  if (mu.length() > n) return 0.0;
  cplx total = 0.0;
  for_each_permutation(mu, n, [&](const std::vector<int>& a) {
    cplx term = 1.0;
    for (int i = 0; i < n; ++i)
      if (a[i]) term *= std::pow(x[i], a[i]);
    total += term;
  });
  return total;
}

cplx evaluate(const SymmetricPolynomial& p, std::span<const cplx> x) {
  if (static_cast<int>(x.size()) != p.nvars()) throw DomainError("evaluation point has wrong length");
  cplx total = 0.0;
  for (const auto& [mu, c] : p.coeffs()) total += c * monomial_value(mu, x);
  return total;
}

const JackTable& JackTable::get(double alpha, int nvars) {
  if (!(alpha > 0)) throw DomainError("alpha must be positive");
  if (nvars < 1) throw DomainError("need at least one variable");
  auto key = std::make_pair(alpha, nvars);
  {
    std::shared_lock lock(registry_mutex);
    auto it = registry().find(key);
    if (it != registry().end()) return *it->second;
  }
  std::unique_lock lock(registry_mutex);
  auto& slot = registry()[key];
  if (!slot) slot = std::make_unique<JackTable>(alpha, nvars);
  return *slot;
}

JackTable::JackTable(double alpha, int nvars) : alpha_(alpha), nvars_(nvars), shells_(kMaxDegree + 1) {
  for (auto& s : shells_) s.store(nullptr);
}

JackTable::~JackTable() {
  for (auto& s : shells_) delete s.load();
}

const JackShell& JackTable::shell(int degree) const {
  if (degree < 0 || degree > kMaxDegree) throw DomainError("Jack degree outside supported range");
  if (auto* s = shells_[degree].load(std::memory_order_acquire)) return *s;
  std::lock_guard lock(build_mutex_);
  if (auto* s = shells_[degree].load(std::memory_order_acquire)) return *s;
  auto built = build(degree);
  const JackShell* raw = built.release();
  shells_[degree].store(raw, std::memory_order_release);
  return *raw;
}

std::unique_ptr<JackShell> JackTable::build(int degree) const {
  auto sh = std::make_unique<JackShell>();
  sh->degree = degree;
  sh->partitions = enumerate_partitions(degree, nvars_);
  const auto& P = sh->partitions;
  const int count = static_cast<int>(P.size());

  std::map<std::vector<int>, int> index;
  for (int i = 0; i < count; ++i) index[padded(P[i], nvars_)] = i;

  // Columns of D_2 - (2/alpha)(n-1)E_1; E_1 acts as the degree.
  std::vector<std::vector<std::pair<int, double>>> cols(count);
  const double shift = 2.0 / alpha_ * (nvars_ - 1) * degree;
  std::vector<double> diag(count, -shift);
  sh->orbits.resize(count);
  for (int m = 0; m < count; ++m) {
    for_each_permutation(P[m], nvars_, [&](const std::vector<int>& a) {
      sh->orbits[m].insert(sh->orbits[m].end(), a.begin(), a.end());
    });
    for (const auto& [e, v] : monomial_image(OperatorKind::D, 2, P[m], nvars_, alpha_)) {
      int row = index.at(e);
      if (row == m)
        diag[m] += v;
      else if (v != 0.0)
        cols[m].emplace_back(row, v);
    }
  }
  sh->eigenvalue = diag;

  sh->rows.resize(count);
  sh->at_ones.resize(count);
  sh->hook.resize(count);
  std::vector<double> c(count), rhs(count);
  for (int K = 0; K < count; ++K) {
    std::fill(c.begin(), c.end(), 0.0);
    std::fill(rhs.begin(), rhs.end(), 0.0);
    const double eps = diag[K];
    auto scatter = [&](int m) {
      for (const auto& [row, v] : cols[m]) rhs[row] += v * c[m];
    };
    c[K] = 1.0;
    scatter(K);
    for (int i = K + 1; i < count; ++i) {
      if (rhs[i] == 0.0 || !dominated_by(P[i], P[K])) continue;
      double denom = eps - diag[i];
      if (std::abs(denom) <= 1e-13 * (std::abs(eps) + 1.0))
        throw InternalError("singular Jack triangular system at " + P[K].str());
      c[i] = rhs[i] / denom;
      scatter(i);
    }
    double ones = 0.0;
    for (int i = K; i < count; ++i) {
      if (c[i] == 0.0) continue;
      sh->rows[K].emplace_back(i, c[i]);
      ones += c[i] * static_cast<double>(sh->orbits[i].size() / nvars_);
    }
    sh->at_ones[K] = ones;
    sh->hook[K] = hook_product(P[K], alpha_);
  }
  return sh;
}

void JackTable::monomials(const JackShell& shell, const std::vector<std::vector<cplx>>& powers,
                          std::vector<cplx>& out) {
  const int n = static_cast<int>(powers.size());
  out.assign(shell.partitions.size(), 0.0);
  for (size_t m = 0; m < shell.partitions.size(); ++m) {
    const auto& orb = shell.orbits[m];
    cplx total = 0.0;
    for (size_t base = 0; base < orb.size(); base += n) {
      cplx term = powers[0][orb[base]];
      for (int i = 1; i < n; ++i) term *= powers[i][orb[base + i]];
      total += term;
    }
    out[m] = total;
  }
}

SymmetricPolynomial jack_in_monomial(const Partition& kappa, double alpha, int nvars) {
  if (!(alpha > 0)) throw DomainError("alpha must be positive");
  if (kappa.length() > nvars) throw DomainError("partition " + kappa.str() + " longer than variable count");
  SymmetricPolynomial p(nvars);
  if (nvars == 0) {
    p.add(kappa, 1.0);
    return p;
  }
  const auto& sh = JackTable::get(alpha, nvars).shell(kappa.weight());
  auto it = std::lower_bound(sh.partitions.begin(), sh.partitions.end(), kappa, std::greater<Partition>());
  int K = static_cast<int>(it - sh.partitions.begin());
  for (const auto& [i, v] : sh.rows[K]) p.add(sh.partitions[i], v);
  return p;
}

double jack_at_ones(const Partition& kappa, double alpha, int nvars) {
  if (!(alpha > 0)) throw DomainError("alpha must be positive");
  if (kappa.length() > nvars) throw DomainError("partition " + kappa.str() + " longer than variable count");
  if (nvars == 0) return 1.0;
  const auto& sh = JackTable::get(alpha, nvars).shell(kappa.weight());
  auto it = std::lower_bound(sh.partitions.begin(), sh.partitions.end(), kappa, std::greater<Partition>());
  return sh.at_ones[it - sh.partitions.begin()];
}

}  // namespace gbe
