#pragma once

#include <compare>
#include <complex>
#include <string>
#include <vector>

namespace gbe {

class Partition {
 public:
  Partition() = default;
  // Trailing zeros are dropped; anything else that is not a non-increasing
  // list of positive integers throws DomainError.
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  int weight() const { return weight_; }
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  // Zero past the last part.
  int operator[](int i) const { return i < length() ? parts_[i] : 0; }

  std::string str() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  // Lexicographic on the part lists.
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<int> parts_;
  int weight_ = 0;
};

enum class Dominance { Less, Greater, Equal, Incomparable };

Partition conjugate(const Partition& kappa);

Dominance dominance(const Partition& kappa, const Partition& sigma);

// kappa <= sigma in dominance order; weights must match.
bool dominated_by(const Partition& kappa, const Partition& sigma);

// Box coordinates are 1-based, (i, j) = (row, column).
int arm_length(const Partition& kappa, int i, int j);
int leg_length(const Partition& kappa, int i, int j);

double hook_product(const Partition& kappa, double alpha);

std::complex<double> gen_pochhammer(std::complex<double> x, const Partition& kappa, double alpha);

// Same value, computed box by box from co-arm and co-leg lengths.
std::complex<double> gen_pochhammer_boxes(std::complex<double> x, const Partition& kappa,
                                          double alpha);

// Descending lexicographic order.
std::vector<Partition> enumerate_partitions(int weight, int max_length);

}  // namespace gbe
