#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <span>

#include "eqfem/solver.hpp"
#include "eqfem/sparse.hpp"

namespace eqfem {

/// Discrete triple (A, W1, W2) for A^T W2 A x + W1 x = f in Euclidean coordinates,
/// so the adjoint of A is its transpose. W1 is n x n, W2 is m x m, A is m x n.
/// W1 and W2 are factorized once at construction.
class OperatorSystem {
public:
  OperatorSystem(SparseMatrix a, SparseMatrix w1, SparseMatrix w2, const SolveOptions& options = {});

  const SparseMatrix& a() const noexcept { return a_; }
  const SparseMatrix& w1() const noexcept { return w1_; }
  const SparseMatrix& w2() const noexcept { return w2_; }
  const SolveOptions& options() const noexcept { return options_; }
  std::size_t primal_dim() const noexcept { return a_.cols(); }
  std::size_t dual_dim() const noexcept { return a_.rows(); }

  Vector apply_w1_inv(std::span<const double> v) const { return w1_solver_->solve(v); }
  Vector apply_w2_inv(std::span<const double> v) const { return w2_solver_->solve(v); }

  /// v^T W1^{-1} v and v^T W2^{-1} v, clamped at zero.
  double w1_inv_norm_sq(std::span<const double> v) const;
  double w2_inv_norm_sq(std::span<const double> v) const;

private:
  SparseMatrix a_, w1_, w2_;
  SolveOptions options_;
  std::shared_ptr<const SpdSolver> w1_solver_, w2_solver_;
};

struct MixedSolution {
  Vector x;  ///< primal, length n
  Vector y;  ///< dual, length m
};

/// Solves (A^T W2 A + W1) x = f and sets y = W2 A x.
MixedSolution solve_primal(const OperatorSystem& sys, std::span<const double> f);

/// Solves (A W1^{-1} A^T + W2^{-1}) y = A W1^{-1} f directly, with inner solves by W1 and W2.
Vector solve_dual(const OperatorSystem& sys, std::span<const double> f);

struct MajorantParts {
  double total = 0.0;
  double eq = 0.0;    ///< |f - W1 x - A^T y|^2 in the W1^{-1} norm
  double flux = 0.0;  ///< |y - W2 A x|^2 in the W2^{-1} norm
};

MajorantParts majorant(const OperatorSystem& sys, std::span<const double> f, std::span<const double> x_approx,
                       std::span<const double> y_approx);

/// |e_x|^2_{W1} + |A e_x|^2_{W2} + |e_y|^2_{W2^{-1}} + |A^T e_y|^2_{W1^{-1}}.
double combined_error_sq(const OperatorSystem& sys, const MixedSolution& exact, const MixedSolution& approx);

/// Primal part |e_x|^2_{W1} + |A e_x|^2_{W2}.
double primal_error_sq(const OperatorSystem& sys, std::span<const double> x, std::span<const double> x_approx);
/// Dual part |e_y|^2_{W2^{-1}} + |A^T e_y|^2_{W1^{-1}}.
double dual_error_sq(const OperatorSystem& sys, std::span<const double> y, std::span<const double> y_approx);

struct EqualityResidual {
  double error_sq = 0.0;
  double majorant = 0.0;
  double f_norm_sq = 0.0;  ///< |f|^2 in the W1^{-1} norm
  double delta = 0.0;      ///< |sqrt(error_sq) - sqrt(majorant)|
  double delta_rel = 0.0;  ///< delta / |f|_{W1^{-1}}
  bool degenerate = false; ///< f = 0; delta is zero by definition
};

/// Compares the majorant of approx with its combined error against the internally solved exact pair.
EqualityResidual equality_residual(const OperatorSystem& sys, std::span<const double> f, const MixedSolution& approx);

/// | |||(x, y)||| - |f|_{W1^{-1}} | for the exact pair of f.
double isometry_deficit(const OperatorSystem& sys, std::span<const double> f);

struct SharpnessReport {
  double primal_error_sq = 0.0;
  double majorant_at_exact_dual = 0.0;  ///< M(x~, y)
  double primal_equality_rel = 0.0;     ///< |M(x~, y) - primal error^2| / max(primal error^2, floor)
  double dual_error_sq = 0.0;
  double majorant_at_exact_primal = 0.0;  ///< M(x, y~)
  double dual_equality_rel = 0.0;
  std::size_t trials = 0;
  std::size_t violations = 0;  ///< random trials that fell below the minimum by more than the slack
  double min_gap = 0.0;        ///< smallest M(trial) - M(minimizer) observed, over both branches
};

/// Checks that y minimizes M(x~, .) with value equal to the primal error, and that x minimizes M(., y~)
/// with value equal to the dual error, against `trials` random competitors on each branch.
SharpnessReport sharpness_check(const OperatorSystem& sys, std::span<const double> f, std::span<const double> x_approx,
                                std::span<const double> y_approx, std::size_t trials, std::uint64_t seed,
                                double slack = 1e-12);

struct BackwardEulerStep {
  Vector x;        ///< x_n
  Vector y;        ///< W2 A x_n (the mixed dual of the step problem)
  Vector y_state;  ///< y_{n-1} + dt Lambda2 (h_n - A x_n), carried to the next step
  Vector f;        ///< assembled step load f_n
  EqualityResidual residual;  ///< equality check at the probe pair (x_{n-1}, Lambda2 A x_{n-1})
};

/// One backward Euler step: W1 = dt^{-2} Lambda1^{-1}, W2 = Lambda2 and
/// f_n = A^T (Lambda2 h_n + y_{n-1}/dt) + dt^{-2} Lambda1^{-1} x_{n-1} + g_n/dt.
BackwardEulerStep backward_euler_step(const SparseMatrix& a, const SparseMatrix& lambda1,
                                      const SparseMatrix& lambda2, double dt, std::span<const double> x_prev,
                                      std::span<const double> y_prev, std::span<const double> g,
                                      std::span<const double> h, const SolveOptions& options = {});

/// Seeded generator for random test systems and vectors.
class RandomSystemGenerator {
public:
  explicit RandomSystemGenerator(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [lo, hi).
  double uniform(double lo = -1.0, double hi = 1.0);
  Vector vector(std::size_t n, double lo = -1.0, double hi = 1.0);
  /// m x n matrix, each entry present with probability `density`, values uniform in [-1, 1].
  SparseMatrix sparse(std::size_t m, std::size_t n, double density = 0.3);
  /// B^T B + n I with B dense uniform in [-1, 1].
  SparseMatrix spd(std::size_t n);
  /// A (m x n, density 0.3), W1 = spd(n), W2 = spd(m).
  OperatorSystem system(std::size_t m, std::size_t n, const SolveOptions& options = {});

private:
  std::mt19937_64 engine_;
};

}  // namespace eqfem
