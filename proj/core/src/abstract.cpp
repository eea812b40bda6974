#include "eqfem/abstract.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eqfem/dense.hpp"
#include "eqfem/error.hpp"

namespace eqfem {

OperatorSystem::OperatorSystem(SparseMatrix a, SparseMatrix w1, SparseMatrix w2, const SolveOptions& options)
    : a_(std::move(a)), w1_(std::move(w1)), w2_(std::move(w2)), options_(options) {
  EQFEM_REQUIRE(w1_.rows() == a_.cols() && w1_.cols() == a_.cols(), "OperatorSystem: W1 must be n x n");
  EQFEM_REQUIRE(w2_.rows() == a_.rows() && w2_.cols() == a_.rows(), "OperatorSystem: W2 must be m x m");
  SolveOptions direct = options_;
  direct.method = SolverMethod::Direct;
  w1_solver_ = std::make_shared<const SpdSolver>(w1_, direct);
  w2_solver_ = std::make_shared<const SpdSolver>(w2_, direct);
}

double OperatorSystem::w1_inv_norm_sq(std::span<const double> v) const {
  return std::max(0.0, dot(v, apply_w1_inv(v)));
}

double OperatorSystem::w2_inv_norm_sq(std::span<const double> v) const {
  return std::max(0.0, dot(v, apply_w2_inv(v)));
}

MixedSolution solve_primal(const OperatorSystem& sys, std::span<const double> f) {
  EQFEM_REQUIRE(f.size() == sys.primal_dim(), "solve_primal: dim f must equal n");
  const SparseMatrix at = sys.a().transpose();
  const SparseMatrix k = add(multiply(at, multiply(sys.w2(), sys.a())), sys.w1());
  MixedSolution sol;
  sol.x = solve_spd(k, f, sys.options());
  sol.y = sys.w2().multiply(sys.a().multiply(sol.x));
  return sol;
}

Vector solve_dual(const OperatorSystem& sys, std::span<const double> f) {
  EQFEM_REQUIRE(f.size() == sys.primal_dim(), "solve_dual: dim f must equal n");
  const std::size_t m = sys.dual_dim();
  const SparseMatrix at = sys.a().transpose();
  DenseMatrix s(m, m);
  Vector e(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    e[j] = 1.0;
    const Vector col_a = sys.a().multiply(sys.apply_w1_inv(at.multiply(e)));
    const Vector col_w = sys.apply_w2_inv(e);
    e[j] = 0.0;
    for (std::size_t i = 0; i < m; ++i) s(i, j) = col_a[i] + col_w[i];
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const double avg = 0.5 * (s(i, j) + s(j, i));
      s(i, j) = avg;
      s(j, i) = avg;
    }
  const Vector rhs = sys.a().multiply(sys.apply_w1_inv(f));
  return DenseCholesky(s).solve(rhs);
}

MajorantParts majorant(const OperatorSystem& sys, std::span<const double> f, std::span<const double> x_approx,
                       std::span<const double> y_approx) {
  EQFEM_REQUIRE(f.size() == sys.primal_dim() && x_approx.size() == sys.primal_dim(),
                "majorant: primal dimension mismatch");
  EQFEM_REQUIRE(y_approx.size() == sys.dual_dim(), "majorant: dual dimension mismatch");
  const Vector w1x = sys.w1().multiply(x_approx);
  const Vector aty = sys.a().multiply_transposed(y_approx);
  Vector r_eq(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r_eq[i] = f[i] - w1x[i] - aty[i];
  const Vector w2ax = sys.w2().multiply(sys.a().multiply(x_approx));
  const Vector r_flux = axpy(y_approx, -1.0, w2ax);

  MajorantParts parts;
  parts.eq = sys.w1_inv_norm_sq(r_eq);
  parts.flux = sys.w2_inv_norm_sq(r_flux);
  parts.total = parts.eq + parts.flux;
  return parts;
}

double primal_error_sq(const OperatorSystem& sys, std::span<const double> x, std::span<const double> x_approx) {
  const Vector e = axpy(x, -1.0, x_approx);
  return weighted_norm_sq(sys.w1(), e) + weighted_norm_sq(sys.w2(), sys.a().multiply(e));
}

double dual_error_sq(const OperatorSystem& sys, std::span<const double> y, std::span<const double> y_approx) {
  const Vector e = axpy(y, -1.0, y_approx);
  return sys.w2_inv_norm_sq(e) + sys.w1_inv_norm_sq(sys.a().multiply_transposed(e));
}

double combined_error_sq(const OperatorSystem& sys, const MixedSolution& exact, const MixedSolution& approx) {
  EQFEM_REQUIRE(exact.x.size() == sys.primal_dim() && approx.x.size() == sys.primal_dim(),
                "combined_error_sq: primal dimension mismatch");
  EQFEM_REQUIRE(exact.y.size() == sys.dual_dim() && approx.y.size() == sys.dual_dim(),
                "combined_error_sq: dual dimension mismatch");
  return primal_error_sq(sys, exact.x, approx.x) + dual_error_sq(sys, exact.y, approx.y);
}

EqualityResidual equality_residual(const OperatorSystem& sys, std::span<const double> f, const MixedSolution& approx) {
  EqualityResidual r;
  r.f_norm_sq = sys.w1_inv_norm_sq(f);
  const MixedSolution exact = solve_primal(sys, f);
  r.error_sq = combined_error_sq(sys, exact, approx);
  r.majorant = majorant(sys, f, approx.x, approx.y).total;
  if (r.f_norm_sq == 0.0) {
    r.degenerate = true;
    return r;
  }
  r.delta = std::abs(std::sqrt(r.error_sq) - std::sqrt(r.majorant));
  r.delta_rel = r.delta / std::sqrt(r.f_norm_sq);
  return r;
}

double isometry_deficit(const OperatorSystem& sys, std::span<const double> f) {
  const MixedSolution sol = solve_primal(sys, f);
  const MixedSolution zero{Vector(sys.primal_dim(), 0.0), Vector(sys.dual_dim(), 0.0)};
  const double norm_sq = combined_error_sq(sys, sol, zero);
  return std::abs(std::sqrt(norm_sq) - std::sqrt(sys.w1_inv_norm_sq(f)));
}

SharpnessReport sharpness_check(const OperatorSystem& sys, std::span<const double> f, std::span<const double> x_approx,
                                std::span<const double> y_approx, std::size_t trials, std::uint64_t seed,
                                double slack) {
  EQFEM_REQUIRE(trials >= 1, "sharpness_check: trials must be at least 1");
  const MixedSolution exact = solve_primal(sys, f);
  const double floor = std::numeric_limits<double>::min();

  SharpnessReport rep;
  rep.trials = trials;
  rep.primal_error_sq = primal_error_sq(sys, exact.x, x_approx);
  rep.majorant_at_exact_dual = majorant(sys, f, x_approx, exact.y).total;
  rep.primal_equality_rel =
      std::abs(rep.majorant_at_exact_dual - rep.primal_error_sq) / std::max(rep.primal_error_sq, floor);
  rep.dual_error_sq = dual_error_sq(sys, exact.y, y_approx);
  rep.majorant_at_exact_primal = majorant(sys, f, exact.x, y_approx).total;
  rep.dual_equality_rel =
      std::abs(rep.majorant_at_exact_primal - rep.dual_error_sq) / std::max(rep.dual_error_sq, floor);

  RandomSystemGenerator rng(seed);
  rep.min_gap = std::numeric_limits<double>::infinity();
  const double scale_y = std::max(1.0, norm2(exact.y));
  const double scale_x = std::max(1.0, norm2(exact.x));
  for (std::size_t t = 0; t < trials; ++t) {
    const Vector psi = axpy(exact.y, scale_y, rng.vector(sys.dual_dim()));
    const double gap_y = majorant(sys, f, x_approx, psi).total - rep.majorant_at_exact_dual;
    const Vector phi = axpy(exact.x, scale_x, rng.vector(sys.primal_dim()));
    const double gap_x = majorant(sys, f, phi, y_approx).total - rep.majorant_at_exact_primal;
    if (gap_y < -slack) ++rep.violations;
    if (gap_x < -slack) ++rep.violations;
    rep.min_gap = std::min({rep.min_gap, gap_y, gap_x});
  }
  return rep;
}

BackwardEulerStep backward_euler_step(const SparseMatrix& a, const SparseMatrix& lambda1,
                                      const SparseMatrix& lambda2, double dt, std::span<const double> x_prev,
                                      std::span<const double> y_prev, std::span<const double> g,
                                      std::span<const double> h, const SolveOptions& options) {
  EQFEM_REQUIRE(dt > 0.0 && std::isfinite(dt), "backward_euler_step: time step must be positive");
  const std::size_t n = a.cols();
  const std::size_t m = a.rows();
  EQFEM_REQUIRE(lambda1.rows() == n && lambda1.cols() == n, "backward_euler_step: Lambda1 must be n x n");
  EQFEM_REQUIRE(lambda2.rows() == m && lambda2.cols() == m, "backward_euler_step: Lambda2 must be m x m");
  EQFEM_REQUIRE(x_prev.size() == n && g.size() == n, "backward_euler_step: primal data dimension mismatch");
  EQFEM_REQUIRE(y_prev.size() == m && h.size() == m, "backward_euler_step: dual data dimension mismatch");
  EQFEM_REQUIRE(lambda1.max_asymmetry() <= 1e-12 && lambda2.max_asymmetry() <= 1e-12,
                "backward_euler_step: Lambda1 and Lambda2 must be symmetric");

  const DenseMatrix l1_inv = DenseCholesky(lambda1.to_dense()).inverse();
  const double inv_dt = 1.0 / dt;
  const SparseMatrix w1 = scale(SparseMatrix::from_dense(l1_inv), inv_dt * inv_dt);
  const OperatorSystem sys(a, w1, lambda2, options);

  // f_n = A^T (Lambda2 h + y_prev / dt) + W1 x_prev + g / dt
  Vector inner = lambda2.multiply(h);
  for (std::size_t i = 0; i < m; ++i) inner[i] += inv_dt * y_prev[i];
  Vector f = a.multiply_transposed(inner);
  const Vector w1x = w1.multiply(x_prev);
  for (std::size_t i = 0; i < n; ++i) f[i] += w1x[i] + inv_dt * g[i];

  BackwardEulerStep step;
  const MixedSolution sol = solve_primal(sys, f);
  step.x = sol.x;
  step.y = sol.y;
  const Vector ax = a.multiply(step.x);
  Vector misfit(m);
  for (std::size_t i = 0; i < m; ++i) misfit[i] = h[i] - ax[i];
  step.y_state = axpy(y_prev, dt, lambda2.multiply(misfit));
  step.f = f;

  const MixedSolution probe{Vector(x_prev.begin(), x_prev.end()), lambda2.multiply(a.multiply(x_prev))};
  step.residual = equality_residual(sys, f, probe);
  return step;
}

double RandomSystemGenerator::uniform(double lo, double hi) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Vector RandomSystemGenerator::vector(std::size_t n, double lo, double hi) {
  Vector v(n);
  for (double& x : v) x = uniform(lo, hi);
  return v;
}

SparseMatrix RandomSystemGenerator::sparse(std::size_t m, std::size_t n, double density) {
  TripletBuilder b(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double keep = uniform(0.0, 1.0);
      const double v = uniform();
      if (keep < density) b.add(i, j, v);
    }
  return b.build();
}

SparseMatrix RandomSystemGenerator::spd(std::size_t n) {
  DenseMatrix bmat(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) bmat(i, j) = uniform();
  DenseMatrix w = bmat.transpose() * bmat;
  for (std::size_t i = 0; i < n; ++i) w(i, i) += static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) w(j, i) = w(i, j);
  return SparseMatrix::from_dense(w);
}

OperatorSystem RandomSystemGenerator::system(std::size_t m, std::size_t n, const SolveOptions& options) {
  SparseMatrix a = sparse(m, n);
  SparseMatrix w1 = spd(n);
  SparseMatrix w2 = spd(m);
  return OperatorSystem(std::move(a), std::move(w1), std::move(w2), options);
}

}  // namespace eqfem
