#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace eqfem {

using Vector = std::vector<double>;

class DenseMatrix;

/// Compressed sparse row matrix in canonical form: per row, strictly
/// increasing column indices and no duplicates. Immutable after construction.
class SparseMatrix {
public:
  SparseMatrix() = default;
  /// Validates the canonical-form invariants; throws ContractError otherwise.
  SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_offsets,
               std::vector<std::size_t> col_indices, std::vector<double> values);

  static SparseMatrix identity(std::size_t n);
  static SparseMatrix diagonal(std::span<const double> d);
  /// Stores every entry whose magnitude exceeds drop_tol.
  static SparseMatrix from_dense(const DenseMatrix& dense, double drop_tol = 0.0);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const std::size_t> row_offsets() const noexcept { return row_offsets_; }
  std::span<const std::size_t> col_indices() const noexcept { return col_indices_; }
  std::span<const double> values() const noexcept { return values_; }

  /// Entry (i, j), zero when not stored.
  double at(std::size_t i, std::size_t j) const;
  Vector diagonal_values() const;

  /// y = A x. Each row is summed left to right over stored columns.
  Vector multiply(std::span<const double> x) const;
  /// y = A^T x, accumulated row by row of A (fixed order).
  Vector multiply_transposed(std::span<const double> x) const;
  SparseMatrix transpose() const;
  DenseMatrix to_dense() const;

  /// max |a_ij - a_ji| / max |a_ij|; zero for the zero matrix.
  double max_asymmetry() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<std::size_t> col_indices_;
  std::vector<double> values_;
};

/// Accumulates (i, j, v) contributions; duplicates are summed in insertion order.
class TripletBuilder {
public:
  TripletBuilder(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  void add(std::size_t i, std::size_t j, double v);
  void reserve(std::size_t n) { entries_.reserve(n); }
  SparseMatrix build() const;

private:
  struct Entry {
    std::size_t row, col;
    double value;
  };
  std::size_t rows_, cols_;
  std::vector<Entry> entries_;
};

/// C = A B.
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
/// alpha A + beta B (same shape).
SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, double alpha = 1.0, double beta = 1.0);
SparseMatrix scale(const SparseMatrix& a, double s);

/// Pairwise-summed dot product (deterministic, low rounding growth).
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
/// Pairwise sum of a sequence.
double pairwise_sum(std::span<const double> a);
/// a + s * b
Vector axpy(std::span<const double> a, double s, std::span<const double> b);

}  // namespace eqfem
