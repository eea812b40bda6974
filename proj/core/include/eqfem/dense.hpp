#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "eqfem/sparse.hpp"

namespace eqfem {

/// Row-major dense matrix.
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  Vector multiply(std::span<const double> x) const;
  DenseMatrix transpose() const;
  DenseMatrix operator*(const DenseMatrix& rhs) const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Dense Cholesky factorization A = L L^T. Throws NotSpdError on a non-positive pivot.
class DenseCholesky {
public:
  explicit DenseCholesky(const DenseMatrix& a);

  std::size_t size() const noexcept { return n_; }
  Vector solve(std::span<const double> b) const;
  DenseMatrix inverse() const;

private:
  std::size_t n_ = 0;
  std::vector<double> l_;  // row-major lower triangle
};

}  // namespace eqfem
