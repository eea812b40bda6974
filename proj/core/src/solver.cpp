#include "eqfem/solver.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <cmath>
#include <optional>
#include <sstream>

#include "eqfem/dense.hpp"
#include "eqfem/error.hpp"

namespace eqfem {

CgResult conjugate_gradient(const SparseMatrix& a, std::span<const double> b, const CgOptions& options,
                            std::span<const double> x0) {
  const std::size_t n = a.rows();
  EQFEM_REQUIRE(a.cols() == n, "conjugate_gradient: matrix must be square");
  EQFEM_REQUIRE(b.size() == n, "conjugate_gradient: rhs dimension mismatch");
  EQFEM_REQUIRE(x0.empty() || x0.size() == n, "conjugate_gradient: initial guess dimension mismatch");

  CgResult result;
  result.x = x0.empty() ? Vector(n, 0.0) : Vector(x0.begin(), x0.end());
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    result.x.assign(n, 0.0);
    result.converged = true;
    return result;
  }

  Vector inv_diag(n, 1.0);
  if (options.jacobi) {
    const Vector d = a.diagonal_values();
    for (std::size_t i = 0; i < n; ++i) {
      if (!(d[i] > 0.0)) throw NotSpdError("conjugate_gradient: non-positive diagonal entry");
      inv_diag[i] = 1.0 / d[i];
    }
  }

  Vector r = axpy(b, -1.0, a.multiply(result.x));
  Vector z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  Vector p = z;
  double rz = dot(r, z);
  const std::size_t cap = options.max_iter > 0 ? options.max_iter : 10 * n;
  double rel = norm2(r) / bnorm;

  std::size_t it = 0;
  while (rel > options.tol && it < cap) {
    const Vector ap = a.multiply(p);
    const double curvature = dot(p, ap);
    if (!(curvature > 0.0)) throw NotSpdError("conjugate_gradient: non-positive curvature");
    const double alpha = rz / curvature;
    for (std::size_t i = 0; i < n; ++i) {
      result.x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    ++it;
    rel = norm2(r) / bnorm;
  }

  result.iterations = it;
  result.relative_residual = rel;
  result.converged = rel <= options.tol;
  if (!result.converged && options.throw_on_stall) {
    std::ostringstream msg;
    msg << "conjugate_gradient: no convergence after " << it << " iterations, relative residual " << rel;
    throw ConvergenceError(msg.str(), rel, it);
  }
  return result;
}

struct SpdSolver::Impl {
  std::size_t n = 0;
  SolveOptions options;
  std::optional<DenseCholesky> dense;
  std::optional<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>, Eigen::Lower, Eigen::AMDOrdering<int>>> sparse;
  std::optional<SparseMatrix> matrix;  // kept for the Cg path
};

SpdSolver::SpdSolver(const SparseMatrix& a, const SolveOptions& options) : impl_(std::make_unique<Impl>()) {
  EQFEM_REQUIRE(a.rows() == a.cols(), "SpdSolver: matrix must be square");
  const double asym = a.max_asymmetry();
  if (asym > 1e-12) {
    std::ostringstream msg;
    msg << "SpdSolver: matrix not symmetric (relative asymmetry " << asym << ")";
    throw NotSpdError(msg.str());
  }
  impl_->n = a.rows();
  impl_->options = options;
  if (options.method == SolverMethod::Cg) {
    impl_->matrix = a;
    return;
  }
  if (a.rows() <= options.dense_limit) {
    impl_->dense.emplace(a.to_dense());
    return;
  }
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(a.nnz());
  const auto off = a.row_offsets();
  const auto col = a.col_indices();
  const auto val = a.values();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = off[i]; k < off[i + 1]; ++k)
      trips.emplace_back(static_cast<int>(i), static_cast<int>(col[k]), val[k]);
  Eigen::SparseMatrix<double> m(static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
  m.setFromTriplets(trips.begin(), trips.end());
  impl_->sparse.emplace();
  impl_->sparse->compute(m);
  if (impl_->sparse->info() != Eigen::Success) throw NotSpdError("SpdSolver: sparse Cholesky failed (matrix not SPD)");
}

SpdSolver::~SpdSolver() = default;
SpdSolver::SpdSolver(SpdSolver&&) noexcept = default;
SpdSolver& SpdSolver::operator=(SpdSolver&&) noexcept = default;

std::size_t SpdSolver::size() const noexcept { return impl_->n; }

Vector SpdSolver::solve(std::span<const double> b) const {
  EQFEM_REQUIRE(b.size() == impl_->n, "SpdSolver::solve: dimension mismatch");
  if (impl_->dense) return impl_->dense->solve(b);
  if (impl_->sparse) {
    Eigen::Map<const Eigen::VectorXd> rhs(b.data(), static_cast<Eigen::Index>(b.size()));
    const Eigen::VectorXd x = impl_->sparse->solve(rhs);
    return Vector(x.data(), x.data() + x.size());
  }
  CgOptions cg;
  cg.tol = impl_->options.tol;
  cg.max_iter = impl_->options.max_iter;
  return conjugate_gradient(*impl_->matrix, b, cg).x;
}

Vector solve_spd(const SparseMatrix& a, std::span<const double> b, const SolveOptions& options) {
  EQFEM_REQUIRE(b.size() == a.rows(), "solve_spd: rhs dimension mismatch");
  return SpdSolver(a, options).solve(b);
}

double weighted_norm_sq(const SparseMatrix& w, std::span<const double> v) {
  EQFEM_REQUIRE(w.rows() == v.size() && w.cols() == v.size(), "weighted_norm_sq: dimension mismatch");
  return dot(v, w.multiply(v));
}

double weighted_inv_norm_sq(const SparseMatrix& w, std::span<const double> v, const SolveOptions& options) {
  EQFEM_REQUIRE(w.rows() == v.size() && w.cols() == v.size(), "weighted_inv_norm_sq: dimension mismatch");
  return std::max(0.0, dot(v, solve_spd(w, v, options)));
}

}  // namespace eqfem
