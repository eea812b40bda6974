#include "eqfem/dense.hpp"

#include <cmath>
#include <sstream>

#include "eqfem/error.hpp"

namespace eqfem {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vector DenseMatrix::multiply(std::span<const double> x) const {
  EQFEM_REQUIRE(x.size() == cols_, "DenseMatrix::multiply: dimension mismatch");
  Vector y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += data_[i * cols_ + j] * x[j];
    y[i] = s;
  }
  return y;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& rhs) const {
  EQFEM_REQUIRE(cols_ == rhs.rows_, "DenseMatrix product: dimension mismatch");
  DenseMatrix c(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) c(i, j) += aik * rhs(k, j);
    }
  return c;
}

DenseCholesky::DenseCholesky(const DenseMatrix& a) : n_(a.rows()), l_(a.rows() * a.rows(), 0.0) {
  EQFEM_REQUIRE(a.rows() == a.cols(), "DenseCholesky: matrix must be square");
  for (std::size_t j = 0; j < n_; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l_[j * n_ + k] * l_[j * n_ + k];
    if (!(d > 0.0)) {
      std::ostringstream msg;
      msg << "DenseCholesky: non-positive pivot " << d << " at row " << j;
      throw NotSpdError(msg.str());
    }
    const double ljj = std::sqrt(d);
    l_[j * n_ + j] = ljj;
    for (std::size_t i = j + 1; i < n_; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l_[i * n_ + k] * l_[j * n_ + k];
      l_[i * n_ + j] = s / ljj;
    }
  }
}

Vector DenseCholesky::solve(std::span<const double> b) const {
  EQFEM_REQUIRE(b.size() == n_, "DenseCholesky::solve: dimension mismatch");
  Vector y(b.begin(), b.end());
  for (std::size_t i = 0; i < n_; ++i) {
    double s = y[i];
    for (std::size_t k = 0; k < i; ++k) s -= l_[i * n_ + k] * y[k];
    y[i] = s / l_[i * n_ + i];
  }
  for (std::size_t ii = n_; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t k = ii + 1; k < n_; ++k) s -= l_[k * n_ + ii] * y[k];
    y[ii] = s / l_[ii * n_ + ii];
  }
  return y;
}

DenseMatrix DenseCholesky::inverse() const {
  DenseMatrix inv(n_, n_);
  Vector e(n_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    e[j] = 1.0;
    const Vector col = solve(e);
    e[j] = 0.0;
    for (std::size_t i = 0; i < n_; ++i) inv(i, j) = col[i];
  }
  // Symmetrize to remove rounding asymmetry.
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double m = 0.5 * (inv(i, j) + inv(j, i));
      inv(i, j) = m;
      inv(j, i) = m;
    }
  return inv;
}

}  // namespace eqfem
