#pragma once

#include <vector>

namespace gbe {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Weight e^{-x^2} on the real line.
const GaussRule& gauss_hermite(int n);

// Unit weight on [-1, 1].
const GaussRule& gauss_legendre(int n);

// Weight (1-x)^a (1+x)^b on [-1, 1]; a, b > -1.
const GaussRule& gauss_jacobi(int n, double a, double b);

}  // namespace gbe
