#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "eqfem/dense.hpp"
#include "eqfem/error.hpp"
#include "eqfem/sparse.hpp"

using namespace eqfem;

namespace {

SparseMatrix random_sparse(std::size_t m, std::size_t n, unsigned seed) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TripletBuilder b(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (u(eng) > 0.2) b.add(i, j, u(eng));
  return b.build();
}

Vector random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector v(n);
  for (auto& x : v) x = u(eng);
  return v;
}

}  // namespace

TEST(Sparse, IdentityTimesVector) {
  const Vector x{1.0, 2.0, 3.0};
  EXPECT_EQ(SparseMatrix::identity(3).multiply(x), x);
}

TEST(Sparse, SmallProduct) {
  TripletBuilder b(2, 2);
  b.add(0, 0, 2.0);
  b.add(1, 0, 1.0);
  b.add(1, 1, 3.0);
  const Vector y = b.build().multiply(Vector{1.0, 1.0});
  EXPECT_EQ(y, (Vector{2.0, 4.0}));
}

TEST(Sparse, Adjointness) {
  for (unsigned seed : {1u, 2u, 3u}) {
    const SparseMatrix a = random_sparse(10, 7, seed);
    const Vector x = random_vector(7, seed + 10), y = random_vector(10, seed + 20);
    const double lhs = dot(a.multiply(x), y);
    const double rhs = dot(x, a.transpose().multiply(y));
    EXPECT_NEAR(lhs, rhs, 1e-13 * std::max(1.0, std::abs(lhs)));
    EXPECT_EQ(a.multiply_transposed(y), a.transpose().multiply(y));
  }
}

TEST(Sparse, AdjointnessLarge) {
  const SparseMatrix a = random_sparse(200, 150, 9);
  const Vector x = random_vector(150, 4), y = random_vector(200, 5);
  const double lhs = dot(a.multiply(x), y);
  EXPECT_NEAR(lhs, dot(x, a.multiply_transposed(y)), 1e-13 * std::max(1.0, std::abs(lhs)));
}

TEST(Sparse, TripletDuplicatesAreSummed) {
  TripletBuilder b(2, 3);
  b.add(1, 2, 1.5);
  b.add(0, 1, 1.0);
  b.add(1, 2, 2.5);
  b.add(0, 1, -1.0);
  const SparseMatrix a = b.build();
  EXPECT_EQ(a.nnz(), 2u);
  EXPECT_DOUBLE_EQ(a.at(1, 2), 4.0);
  EXPECT_DOUBLE_EQ(a.at(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(a.at(0, 0), 0.0);
}

TEST(Sparse, CanonicalFormIsValidated) {
  EXPECT_THROW(SparseMatrix(2, 2, {0, 2, 2}, {1, 0}, {1.0, 1.0}), ContractError);
  EXPECT_THROW(SparseMatrix(2, 2, {0, 1, 1}, {5}, {1.0}), ContractError);
  EXPECT_THROW(SparseMatrix(2, 2, {0, 1, 1}, {0}, {NAN}), ContractError);
  EXPECT_THROW(SparseMatrix(2, 2, {0, 1}, {0}, {1.0}), ContractError);
  EXPECT_NO_THROW(SparseMatrix(2, 2, {0, 1, 2}, {0, 1}, {1.0, 1.0}));
}

TEST(Sparse, DimensionMismatchThrows) {
  const SparseMatrix a = SparseMatrix::identity(3);
  EXPECT_THROW(a.multiply(Vector{1.0, 2.0}), ContractError);
  EXPECT_THROW(a.multiply_transposed(Vector{1.0}), ContractError);
  EXPECT_THROW(add(a, SparseMatrix::identity(2)), ContractError);
  EXPECT_THROW(multiply(random_sparse(3, 4, 1), random_sparse(3, 4, 2)), ContractError);
}

TEST(Sparse, TransposeIsCanonical) {
  const SparseMatrix a = random_sparse(6, 9, 7);
  const SparseMatrix t = a.transpose();
  EXPECT_EQ(t.rows(), 9u);
  EXPECT_EQ(t.cols(), 6u);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 9; ++j) EXPECT_EQ(a.at(i, j), t.at(j, i));
  const SparseMatrix tt = t.transpose();
  EXPECT_TRUE(std::equal(tt.values().begin(), tt.values().end(), a.values().begin(), a.values().end()));
}

TEST(Sparse, ProductMatchesDense) {
  const SparseMatrix a = random_sparse(5, 4, 11), b = random_sparse(4, 6, 12);
  const DenseMatrix c = multiply(a, b).to_dense();
  const DenseMatrix d = a.to_dense() * b.to_dense();
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 6; ++j) EXPECT_NEAR(c(i, j), d(i, j), 1e-14);
}

TEST(Sparse, AddAndScale) {
  const SparseMatrix a = random_sparse(4, 4, 3), b = random_sparse(4, 4, 4);
  const SparseMatrix c = add(a, b, 2.0, -1.0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(c.at(i, j), 2.0 * a.at(i, j) - b.at(i, j), 1e-15);
  EXPECT_DOUBLE_EQ(scale(a, 3.0).at(0, 0), 3.0 * a.at(0, 0));
}

TEST(Sparse, AsymmetryMeasure) {
  EXPECT_EQ(SparseMatrix::identity(4).max_asymmetry(), 0.0);
  TripletBuilder b(2, 2);
  b.add(0, 1, 1.0);
  b.add(1, 0, 2.0);
  EXPECT_GT(b.build().max_asymmetry(), 0.1);
}

TEST(Sparse, ReductionsAreDeterministic) {
  const Vector v = random_vector(1001, 8);
  EXPECT_EQ(pairwise_sum(v), pairwise_sum(v));
  double naive = 0.0;
  for (double x : v) naive += x;
  EXPECT_NEAR(pairwise_sum(v), naive, 1e-12);
  EXPECT_DOUBLE_EQ(norm2(Vector{3.0, 4.0}), 5.0);
  EXPECT_EQ(axpy(Vector{1.0, 2.0}, 2.0, Vector{1.0, 1.0}), (Vector{3.0, 4.0}));
}
