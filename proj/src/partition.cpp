#include "gbe/partition.hpp"

#include <algorithm>

#include "gbe/error.hpp"

namespace gbe {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw DomainError("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw DomainError("partition parts must be non-increasing");
    weight_ += parts_[i];
  }
}

std::string Partition::str() const {
  std::string out = "(";
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out + ")";
}

Partition conjugate(const Partition& kappa) {
  std::vector<int> c(kappa.empty() ? 0 : kappa[0], 0);
  for (int part : kappa.parts())
    for (int j = 0; j < part; ++j) ++c[j];
  return Partition(std::move(c));
}

Dominance dominance(const Partition& kappa, const Partition& sigma) {
  if (kappa.weight() != sigma.weight()) throw DomainError("dominance needs equal weights");
  bool le = true, ge = true;
  int a = 0, b = 0;
  int len = std::max(kappa.length(), sigma.length());
  for (int i = 0; i < len; ++i) {
    a += kappa[i];
    b += sigma[i];
    if (a > b) le = false;
    if (a < b) ge = false;
  }
  if (le && ge) return Dominance::Equal;
  if (le) return Dominance::Less;
  if (ge) return Dominance::Greater;
  return Dominance::Incomparable;
}

bool dominated_by(const Partition& kappa, const Partition& sigma) {
  auto d = dominance(kappa, sigma);
  return d == Dominance::Less || d == Dominance::Equal;
}

int arm_length(const Partition& kappa, int i, int j) { return kappa[i - 1] - j; }

int leg_length(const Partition& kappa, int i, int j) {
  int count = 0;
  for (int p : kappa.parts())
    if (p >= j) ++count;
  return count - i;
}

double hook_product(const Partition& kappa, double alpha) {
  if (!(alpha > 0)) throw DomainError("hook_product needs alpha > 0");
  auto conj = conjugate(kappa);
  double h = 1.0;
  for (int i = 1; i <= kappa.length(); ++i)
    for (int j = 1; j <= kappa[i - 1]; ++j)
      h *= 1.0 + (kappa[i - 1] - j) + (conj[j - 1] - i) / alpha;
  return h;
}

std::complex<double> gen_pochhammer(std::complex<double> x, const Partition& kappa, double alpha) {
  if (!(alpha > 0)) throw DomainError("gen_pochhammer needs alpha > 0");
  std::complex<double> r = 1.0;
  for (int i = 1; i <= kappa.length(); ++i) {
    std::complex<double> base = x - (i - 1) / alpha;
    for (int t = 0; t < kappa[i - 1]; ++t) r *= base + static_cast<double>(t);
  }
  return r;
}

std::complex<double> gen_pochhammer_boxes(std::complex<double> x, const Partition& kappa,
                                          double alpha) {
  std::complex<double> r = 1.0;
  for (int i = 1; i <= kappa.length(); ++i)
    for (int j = 1; j <= kappa[i - 1]; ++j) r *= x + static_cast<double>(j - 1) - (i - 1) / alpha;
  return r;
}

namespace {

void fill(int remaining, int cap, int slots, std::vector<int>& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  if (slots == 0) return;
  for (int p = std::min(remaining, cap); p >= 1; --p) {
    cur.push_back(p);
    fill(remaining - p, p, slots - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> enumerate_partitions(int weight, int max_length) {
  std::vector<Partition> out;
  if (weight < 0 || max_length < 0) return out;
  std::vector<int> cur;
  fill(weight, weight, max_length, cur, out);
  return out;
}

}  // namespace gbe
