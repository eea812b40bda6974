#pragma once

#include <cstddef>
#include <memory>
#include <span>

#include "eqfem/sparse.hpp"

namespace eqfem {

enum class SolverMethod {
  Direct,  ///< dense Cholesky for n <= dense_limit, sparse Cholesky above
  Cg,      ///< Jacobi-preconditioned conjugate gradient
};

struct SolveOptions {
  SolverMethod method = SolverMethod::Direct;
  double tol = 1e-12;          ///< relative residual target for Cg
  std::size_t max_iter = 0;    ///< 0 selects 10 n
  std::size_t dense_limit = 2000;
};

struct CgResult {
  Vector x;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

struct CgOptions {
  double tol = 1e-12;
  std::size_t max_iter = 0;  ///< 0 selects 10 n
  bool jacobi = true;
  /// When false a capped run returns its last iterate instead of throwing.
  bool throw_on_stall = true;
};

/// Conjugate gradient for SPD A. Throws NotSpdError on non-positive curvature,
/// ConvergenceError (with the final residual) when the cap is hit and throw_on_stall is set.
CgResult conjugate_gradient(const SparseMatrix& a, std::span<const double> b, const CgOptions& options,
                            std::span<const double> x0 = {});

/// Reusable factorization of an SPD matrix.
class SpdSolver {
public:
  explicit SpdSolver(const SparseMatrix& a, const SolveOptions& options = {});
  ~SpdSolver();
  SpdSolver(SpdSolver&&) noexcept;
  SpdSolver& operator=(SpdSolver&&) noexcept;

  std::size_t size() const noexcept;
  Vector solve(std::span<const double> b) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Solves A x = b for symmetric positive definite A.
/// Rejects matrices whose relative asymmetry exceeds 1e-12.
Vector solve_spd(const SparseMatrix& a, std::span<const double> b, const SolveOptions& options = {});

/// v^T W v
double weighted_norm_sq(const SparseMatrix& w, std::span<const double> v);
/// v^T W^{-1} v, clamped at zero.
double weighted_inv_norm_sq(const SparseMatrix& w, std::span<const double> v, const SolveOptions& options = {});

}  // namespace eqfem
