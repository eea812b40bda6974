#include "eqfem/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eqfem/dense.hpp"
#include "eqfem/error.hpp"

namespace eqfem {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, std::vector<std::size_t> row_offsets,
                           std::vector<std::size_t> col_indices, std::vector<double> values)
    : rows_(rows),
      cols_(cols),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      values_(std::move(values)) {
  EQFEM_REQUIRE(row_offsets_.size() == rows_ + 1, "SparseMatrix: row_offsets must have rows+1 entries");
  EQFEM_REQUIRE(row_offsets_.front() == 0, "SparseMatrix: row_offsets must start at 0");
  EQFEM_REQUIRE(row_offsets_.back() == values_.size(), "SparseMatrix: last offset must equal nnz");
  EQFEM_REQUIRE(col_indices_.size() == values_.size(), "SparseMatrix: index/value length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) {
    EQFEM_REQUIRE(row_offsets_[i] <= row_offsets_[i + 1], "SparseMatrix: row_offsets not monotone");
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      EQFEM_REQUIRE(col_indices_[k] < cols_, "SparseMatrix: column index out of range");
      EQFEM_REQUIRE(k == row_offsets_[i] || col_indices_[k - 1] < col_indices_[k],
                    "SparseMatrix: columns must be strictly increasing within a row");
      EQFEM_REQUIRE(std::isfinite(values_[k]), "SparseMatrix: non-finite value");
    }
  }
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<double> ones(n, 1.0);
  return diagonal(ones);
}

SparseMatrix SparseMatrix::diagonal(std::span<const double> d) {
  const std::size_t n = d.size();
  std::vector<std::size_t> offsets(n + 1);
  std::iota(offsets.begin(), offsets.end(), std::size_t{0});
  std::vector<std::size_t> cols(n);
  std::iota(cols.begin(), cols.end(), std::size_t{0});
  return SparseMatrix(n, n, std::move(offsets), std::move(cols), std::vector<double>(d.begin(), d.end()));
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& dense, double drop_tol) {
  std::vector<std::size_t> offsets{0};
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  for (std::size_t i = 0; i < dense.rows(); ++i) {
    for (std::size_t j = 0; j < dense.cols(); ++j) {
      const double v = dense(i, j);
      if (std::abs(v) > drop_tol) {
        cols.push_back(j);
        vals.push_back(v);
      }
    }
    offsets.push_back(vals.size());
  }
  return SparseMatrix(dense.rows(), dense.cols(), std::move(offsets), std::move(cols), std::move(vals));
}

double SparseMatrix::at(std::size_t i, std::size_t j) const {
  EQFEM_REQUIRE(i < rows_ && j < cols_, "SparseMatrix::at: index out of range");
  const auto first = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i]);
  const auto last = col_indices_.begin() + static_cast<std::ptrdiff_t>(row_offsets_[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - col_indices_.begin())];
}

Vector SparseMatrix::diagonal_values() const {
  Vector d(std::min(rows_, cols_), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = at(i, i);
  return d;
}

Vector SparseMatrix::multiply(std::span<const double> x) const {
  EQFEM_REQUIRE(x.size() == cols_, "spmv: dimension mismatch");
  Vector y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) s += values_[k] * x[col_indices_[k]];
    y[i] = s;
  }
  return y;
}

Vector SparseMatrix::multiply_transposed(std::span<const double> x) const {
  EQFEM_REQUIRE(x.size() == rows_, "spmv (transposed): dimension mismatch");
  Vector y(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double xi = x[i];
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) y[col_indices_[k]] += values_[k] * xi;
  }
  return y;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<std::size_t> counts(cols_ + 1, 0);
  for (const std::size_t c : col_indices_) ++counts[c + 1];
  std::partial_sum(counts.begin(), counts.end(), counts.begin());
  std::vector<std::size_t> offsets = counts;
  std::vector<std::size_t> cols(nnz());
  std::vector<double> vals(nnz());
  // Rows of A are visited in increasing order, so each transposed row comes out sorted.
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      const std::size_t dst = counts[col_indices_[k]]++;
      cols[dst] = i;
      vals[dst] = values_[k];
    }
  }
  return SparseMatrix(cols_, rows_, std::move(offsets), std::move(cols), std::move(vals));
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix d(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) d(i, col_indices_[k]) = values_[k];
  return d;
}

double SparseMatrix::max_asymmetry() const {
  if (rows_ != cols_) return std::numeric_limits<double>::infinity();
  double scale = 0.0;
  for (const double v : values_) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  const SparseMatrix t = transpose();
  double worst = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    std::size_t ka = row_offsets_[i], kt = t.row_offsets_[i];
    const std::size_t ea = row_offsets_[i + 1], et = t.row_offsets_[i + 1];
    while (ka < ea || kt < et) {
      const std::size_t ca = ka < ea ? col_indices_[ka] : cols_;
      const std::size_t ct = kt < et ? t.col_indices_[kt] : cols_;
      double diff;
      if (ca == ct) {
        diff = values_[ka++] - t.values_[kt++];
      } else if (ca < ct) {
        diff = values_[ka++];
      } else {
        diff = t.values_[kt++];
      }
      worst = std::max(worst, std::abs(diff));
    }
  }
  return worst / scale;
}

void TripletBuilder::add(std::size_t i, std::size_t j, double v) {
  EQFEM_REQUIRE(i < rows_ && j < cols_, "TripletBuilder: index out of range");
  entries_.push_back({i, j, v});
}

SparseMatrix TripletBuilder::build() const {
  std::vector<std::size_t> order(entries_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Stable sort keeps insertion order among duplicates, so their sum is reproducible.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ea = entries_[a];
    const auto& eb = entries_[b];
    return ea.row != eb.row ? ea.row < eb.row : ea.col < eb.col;
  });
  std::vector<std::size_t> offsets(rows_ + 1, 0);
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  cols.reserve(order.size());
  vals.reserve(order.size());
  std::size_t last_row = rows_, last_col = cols_;
  for (const std::size_t idx : order) {
    const auto& e = entries_[idx];
    if (e.row == last_row && e.col == last_col) {
      vals.back() += e.value;
    } else {
      cols.push_back(e.col);
      vals.push_back(e.value);
      ++offsets[e.row + 1];
      last_row = e.row;
      last_col = e.col;
    }
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  return SparseMatrix(rows_, cols_, std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  EQFEM_REQUIRE(a.cols() == b.rows(), "sparse multiply: dimension mismatch");
  const auto ao = a.row_offsets();
  const auto ac = a.col_indices();
  const auto av = a.values();
  const auto bo = b.row_offsets();
  const auto bc = b.col_indices();
  const auto bv = b.values();

  std::vector<std::size_t> offsets{0};
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  std::vector<double> acc(b.cols(), 0.0);
  std::vector<char> used(b.cols(), 0);
  std::vector<std::size_t> pattern;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    pattern.clear();
    for (std::size_t ka = ao[i]; ka < ao[i + 1]; ++ka) {
      const std::size_t k = ac[ka];
      const double aik = av[ka];
      for (std::size_t kb = bo[k]; kb < bo[k + 1]; ++kb) {
        const std::size_t j = bc[kb];
        if (!used[j]) {
          used[j] = 1;
          pattern.push_back(j);
        }
        acc[j] += aik * bv[kb];
      }
    }
    std::sort(pattern.begin(), pattern.end());
    for (const std::size_t j : pattern) {
      cols.push_back(j);
      vals.push_back(acc[j]);
      acc[j] = 0.0;
      used[j] = 0;
    }
    offsets.push_back(vals.size());
  }
  return SparseMatrix(a.rows(), b.cols(), std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, double alpha, double beta) {
  EQFEM_REQUIRE(a.rows() == b.rows() && a.cols() == b.cols(), "sparse add: shape mismatch");
  std::vector<std::size_t> offsets{0};
  std::vector<std::size_t> cols;
  std::vector<double> vals;
  const auto ao = a.row_offsets();
  const auto bo = b.row_offsets();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::size_t ka = ao[i], kb = bo[i];
    while (ka < ao[i + 1] || kb < bo[i + 1]) {
      const std::size_t ca = ka < ao[i + 1] ? a.col_indices()[ka] : a.cols();
      const std::size_t cb = kb < bo[i + 1] ? b.col_indices()[kb] : b.cols();
      if (ca == cb) {
        cols.push_back(ca);
        vals.push_back(alpha * a.values()[ka++] + beta * b.values()[kb++]);
      } else if (ca < cb) {
        cols.push_back(ca);
        vals.push_back(alpha * a.values()[ka++]);
      } else {
        cols.push_back(cb);
        vals.push_back(beta * b.values()[kb++]);
      }
    }
    offsets.push_back(vals.size());
  }
  return SparseMatrix(a.rows(), a.cols(), std::move(offsets), std::move(cols), std::move(vals));
}

SparseMatrix scale(const SparseMatrix& a, double s) {
  std::vector<double> vals(a.values().begin(), a.values().end());
  for (double& v : vals) v *= s;
  return SparseMatrix(a.rows(), a.cols(), {a.row_offsets().begin(), a.row_offsets().end()},
                      {a.col_indices().begin(), a.col_indices().end()}, std::move(vals));
}

namespace {

template <class F>
double pairwise(std::size_t lo, std::size_t hi, const F& term) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += term(i);
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise(lo, mid, term) + pairwise(mid, hi, term);
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  EQFEM_REQUIRE(a.size() == b.size(), "dot: dimension mismatch");
  return pairwise(0, a.size(), [&](std::size_t i) { return a[i] * b[i]; });
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double pairwise_sum(std::span<const double> a) {
  return pairwise(0, a.size(), [&](std::size_t i) { return a[i]; });
}

Vector axpy(std::span<const double> a, double s, std::span<const double> b) {
  EQFEM_REQUIRE(a.size() == b.size(), "axpy: dimension mismatch");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
  return r;
}

}  // namespace eqfem
