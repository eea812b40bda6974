#pragma once

#include <array>
#include <vector>

namespace eqfem {

struct QuadraturePoint {
  std::array<double, 3> bary;  ///< barycentric coordinates
  double weight;               ///< reference-triangle measure; weights of a rule sum to 1/2
};

struct QuadratureRule {
  int degree = 0;  ///< exact for all polynomials of total degree <= degree
  std::vector<QuadraturePoint> points;
};

/// Symmetric positive-weight rule on the reference triangle exact to at least `degree` (1..10).
/// The returned reference stays valid for the program lifetime.
const QuadratureRule& triangle_rule(int degree);

/// Two-point Gauss rule on [0, 1]: parameters and weights summing to 1.
struct EdgeRule {
  std::array<double, 2> s;
  std::array<double, 2> w;
};
const EdgeRule& edge_gauss2();

}  // namespace eqfem
