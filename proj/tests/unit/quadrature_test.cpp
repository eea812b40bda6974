#include <gtest/gtest.h>

#include <cmath>

#include "eqfem/error.hpp"
#include "eqfem/quadrature.hpp"

using namespace eqfem;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// int_T x^a y^b over the reference triangle = a! b! / (a + b + 2)!
double exact_monomial(int a, int b) { return factorial(a) * factorial(b) / factorial(a + b + 2); }

double apply_rule(const QuadratureRule& rule, int a, int b) {
  double s = 0.0;
  for (const auto& q : rule.points) s += q.weight * std::pow(q.bary[1], a) * std::pow(q.bary[2], b);
  return s;
}

}  // namespace

TEST(Quadrature, MixedMonomial) {
  EXPECT_NEAR(apply_rule(triangle_rule(2), 1, 1), 1.0 / 24.0, 1e-16);
}

TEST(Quadrature, WeightsPositiveAndSumToHalf) {
  for (int d = 1; d <= 10; ++d) {
    const QuadratureRule& rule = triangle_rule(d);
    EXPECT_GE(rule.degree, d);
    double s = 0.0;
    for (const auto& q : rule.points) {
      EXPECT_GT(q.weight, 0.0);
      EXPECT_NEAR(q.bary[0] + q.bary[1] + q.bary[2], 1.0, 1e-15);
      for (double l : q.bary) EXPECT_GE(l, 0.0);
      s += q.weight;
    }
    EXPECT_NEAR(s, 0.5, 1e-15) << "degree " << d;
  }
}

TEST(Quadrature, ExactForMonomials) {
  for (int d = 1; d <= 10; ++d) {
    const QuadratureRule& rule = triangle_rule(d);
    for (int a = 0; a <= d; ++a)
      for (int b = 0; a + b <= d; ++b)
        EXPECT_NEAR(apply_rule(rule, a, b), exact_monomial(a, b), 1e-15)
            << "rule " << d << " monomial x^" << a << " y^" << b;
  }
}

TEST(Quadrature, Symmetric) {
  // every point set is invariant under permutation of barycentric coordinates
  for (int d = 1; d <= 10; ++d) {
    const QuadratureRule& rule = triangle_rule(d);
    for (const auto& q : rule.points) {
      bool found = false;
      for (const auto& r : rule.points)
        found = found || (std::abs(r.bary[0] - q.bary[1]) < 1e-14 && std::abs(r.bary[1] - q.bary[0]) < 1e-14 &&
                          std::abs(r.weight - q.weight) < 1e-14);
      EXPECT_TRUE(found) << "degree " << d;
    }
  }
}

TEST(Quadrature, RejectsOutOfRange) {
  EXPECT_THROW(triangle_rule(0), ContractError);
  EXPECT_THROW(triangle_rule(11), ContractError);
}

TEST(Quadrature, EdgeGauss) {
  const EdgeRule& r = edge_gauss2();
  EXPECT_DOUBLE_EQ(r.w[0] + r.w[1], 1.0);
  for (int k = 0; k <= 3; ++k) {
    const double q = r.w[0] * std::pow(r.s[0], k) + r.w[1] * std::pow(r.s[1], k);
    EXPECT_NEAR(q, 1.0 / (k + 1), 1e-15);
  }
}
