#include <gtest/gtest.h>

#include <cmath>

#include "eqfem/abstract.hpp"
#include "eqfem/error.hpp"

using namespace eqfem;

namespace {

OperatorSystem scalar_system() {
  return OperatorSystem(SparseMatrix::identity(1), SparseMatrix::identity(1), SparseMatrix::identity(1));
}

double rel_diff(const Vector& a, const Vector& b) { return norm2(axpy(a, -1.0, b)) / std::max(1e-300, norm2(b)); }

}  // namespace

TEST(Abstract, ZeroOperator) {
  const OperatorSystem sys(TripletBuilder(2, 3).build(), SparseMatrix::identity(3), SparseMatrix::identity(2));
  const Vector f{1.0, -2.0, 3.0};
  const MixedSolution s = solve_primal(sys, f);
  EXPECT_EQ(s.x, f);
  EXPECT_EQ(s.y, (Vector{0.0, 0.0}));
  EXPECT_EQ(solve_dual(sys, f), (Vector{0.0, 0.0}));
}

TEST(Abstract, ScalarSystem) {
  const OperatorSystem sys = scalar_system();
  const MixedSolution s = solve_primal(sys, Vector{2.0});
  EXPECT_DOUBLE_EQ(s.x[0], 1.0);
  EXPECT_DOUBLE_EQ(s.y[0], 1.0);
  EXPECT_LE(isometry_deficit(sys, Vector{2.0}), 1e-14);
}

TEST(Abstract, PrimalResidual) {
  RandomSystemGenerator g(12);
  const OperatorSystem sys = g.system(12, 8);
  const Vector f = g.vector(8);
  const MixedSolution s = solve_primal(sys, f);
  const Vector lhs = axpy(sys.a().multiply_transposed(sys.w2().multiply(sys.a().multiply(s.x))), 1.0,
                          sys.w1().multiply(s.x));
  EXPECT_LE(norm2(axpy(lhs, -1.0, f)), 1e-12 * norm2(f));
  EXPECT_LE(rel_diff(s.y, sys.w2().multiply(sys.a().multiply(s.x))), 1e-15);
}

TEST(Abstract, DualPathsAgree) {
  RandomSystemGenerator g(10);
  const OperatorSystem sys = g.system(10, 6);
  const Vector f = g.vector(6);
  const Vector y = solve_dual(sys, f);
  EXPECT_LE(rel_diff(y, solve_primal(sys, f).y), 1e-9);
  const double dual_norm = sys.w2_inv_norm_sq(y) + sys.w1_inv_norm_sq(sys.a().multiply_transposed(y));
  EXPECT_LE(dual_norm, sys.w1_inv_norm_sq(f) * (1.0 + 1e-12));
}

TEST(Abstract, MajorantAtExactAndZero) {
  RandomSystemGenerator g(4);
  const OperatorSystem sys = g.system(7, 5);
  const Vector f = g.vector(5);
  const MixedSolution s = solve_primal(sys, f);
  const double fn = sys.w1_inv_norm_sq(f);
  EXPECT_LE(majorant(sys, f, s.x, s.y).total, 1e-20 * fn + 1e-28);
  const MajorantParts zero = majorant(sys, f, Vector(5, 0.0), Vector(7, 0.0));
  EXPECT_NEAR(zero.total, fn, 1e-14 * fn);
  EXPECT_EQ(zero.flux, 0.0);
  EXPECT_NEAR(combined_error_sq(sys, s, {Vector(5, 0.0), Vector(7, 0.0)}), fn, 1e-12 * fn);
}

TEST(Abstract, EqualityForPerturbedPair) {
  RandomSystemGenerator g(5);
  const OperatorSystem sys = g.system(5, 7);
  const Vector f = g.vector(7);
  const MixedSolution s = solve_primal(sys, f);
  const MixedSolution approx{axpy(s.x, 0.1, g.vector(7)), axpy(s.y, 0.1, g.vector(5))};
  const double m = majorant(sys, f, approx.x, approx.y).total;
  EXPECT_NEAR(m, combined_error_sq(sys, s, approx), 1e-12 * m);
}

TEST(Abstract, EqualityResidualRandom) {
  RandomSystemGenerator g(99);
  for (int k = 0; k < 20; ++k) {
    const OperatorSystem sys = g.system(3 + k, 2 + 2 * k);
    const Vector f = g.vector(2 + 2 * k);
    const EqualityResidual r = equality_residual(sys, f, {g.vector(2 + 2 * k), g.vector(3 + k)});
    EXPECT_LE(r.delta_rel, 1e-10);
    EXPECT_FALSE(r.degenerate);
  }
}

TEST(Abstract, EqualityWithZeroLoad) {
  RandomSystemGenerator g(1);
  const OperatorSystem sys = g.system(4, 3);
  const EqualityResidual r = equality_residual(sys, Vector(3, 0.0), {g.vector(3), g.vector(4)});
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.delta, 0.0);
  EXPECT_EQ(isometry_deficit(sys, Vector(3, 0.0)), 0.0);
}

TEST(Abstract, EqualityWithCrudeInnerSolves) {
  RandomSystemGenerator g(8);
  const OperatorSystem sys = g.system(30, 20);
  const Vector f = g.vector(20);
  // a crude primal iterate: two CG steps on the primal operator
  const SparseMatrix k = add(multiply(sys.a().transpose(), multiply(sys.w2(), sys.a())), sys.w1());
  CgOptions opt;
  opt.max_iter = 2;
  opt.throw_on_stall = false;
  const Vector x = conjugate_gradient(k, f, opt).x;
  const EqualityResidual r = equality_residual(sys, f, {x, sys.w2().multiply(sys.a().multiply(x))});
  EXPECT_LE(r.delta_rel, 1e-9);
}

TEST(Abstract, IsometryDeficit) {
  RandomSystemGenerator g(20);
  const OperatorSystem sys = g.system(20, 15);
  const Vector f = g.vector(15);
  EXPECT_LE(isometry_deficit(sys, f), 1e-10 * std::sqrt(sys.w1_inv_norm_sq(f)));
}

TEST(Abstract, ScalingCovariance) {
  RandomSystemGenerator g(21);
  const OperatorSystem sys = g.system(6, 6);
  const Vector f = g.vector(6);
  Vector f3 = f;
  for (auto& v : f3) v *= -3.0;
  const double m1 = majorant(sys, f, Vector(6, 0.0), Vector(6, 0.0)).total;
  const double m3 = majorant(sys, f3, Vector(6, 0.0), Vector(6, 0.0)).total;
  EXPECT_NEAR(std::sqrt(m3), 3.0 * std::sqrt(m1), 1e-13 * std::sqrt(m3));
}

TEST(Abstract, MajorantContinuity) {
  RandomSystemGenerator g(22);
  const OperatorSystem sys = g.system(8, 6);
  const Vector f = g.vector(6);
  const MixedSolution s = solve_primal(sys, f);
  const Vector dx = g.vector(6), ya = axpy(s.y, 0.5, g.vector(8));
  const double limit = dual_error_sq(sys, s.y, ya);
  double previous = 1e300;
  for (double h : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const double gap = std::abs(majorant(sys, f, axpy(s.x, h, dx), ya).total - limit);
    EXPECT_LT(gap, previous);
    previous = gap;
  }
}

TEST(Abstract, Sharpness) {
  RandomSystemGenerator g(30);
  const OperatorSystem sys = g.system(10, 8);
  const Vector f = g.vector(8);
  const SharpnessReport r = sharpness_check(sys, f, g.vector(8), g.vector(10), 100, 5);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_LE(r.primal_equality_rel, 1e-10);
  EXPECT_LE(r.dual_equality_rel, 1e-10);
  EXPECT_GE(r.min_gap, -1e-12);

  const MixedSolution s = solve_primal(sys, f);
  const SharpnessReport exact = sharpness_check(sys, f, s.x, s.y, 10, 6);
  EXPECT_LE(exact.majorant_at_exact_dual, 1e-20 * sys.w1_inv_norm_sq(f) + 1e-28);
}

TEST(Abstract, BackwardEulerZeroData) {
  RandomSystemGenerator g(3);
  const SparseMatrix a = g.sparse(4, 3), l1 = g.spd(3), l2 = g.spd(4);
  const BackwardEulerStep s =
      backward_euler_step(a, l1, l2, 0.1, Vector(3, 0.0), Vector(4, 0.0), Vector(3, 0.0), Vector(4, 0.0));
  EXPECT_EQ(norm2(s.x), 0.0);
  EXPECT_EQ(norm2(s.y), 0.0);
}

TEST(Abstract, BackwardEulerScalar) {
  const SparseMatrix one = SparseMatrix::identity(1);
  const BackwardEulerStep s =
      backward_euler_step(one, one, one, 1.0, Vector{1.0}, Vector{0.0}, Vector{0.0}, Vector{0.0});
  EXPECT_DOUBLE_EQ(s.f[0], 1.0);
  EXPECT_DOUBLE_EQ(s.x[0], 0.5);
  EXPECT_DOUBLE_EQ(s.y[0], 0.5);
}

TEST(Abstract, BackwardEulerSequence) {
  RandomSystemGenerator g(11);
  const SparseMatrix a = g.sparse(10, 8), l1 = g.spd(8), l2 = g.spd(10);
  Vector x(8, 0.0), y(10, 0.0);
  for (int n = 0; n < 50; ++n) {
    const BackwardEulerStep s = backward_euler_step(a, l1, l2, 0.02, x, y, g.vector(8), g.vector(10));
    EXPECT_LE(s.residual.delta_rel, 1e-10);
    x = s.x;
    y = s.y_state;
  }
}

TEST(Abstract, BackwardEulerRejectsBadInput) {
  const SparseMatrix one = SparseMatrix::identity(1);
  const SparseMatrix neg = SparseMatrix::diagonal(Vector{-1.0});
  EXPECT_THROW(backward_euler_step(one, neg, one, 1.0, Vector{1.0}, Vector{0.0}, Vector{0.0}, Vector{0.0}),
               NotSpdError);
  EXPECT_THROW(backward_euler_step(one, one, one, 0.0, Vector{1.0}, Vector{0.0}, Vector{0.0}, Vector{0.0}),
               ContractError);
}

TEST(Abstract, ShapeValidation) {
  RandomSystemGenerator g(1);
  EXPECT_THROW(OperatorSystem(g.sparse(3, 2), g.spd(3), g.spd(3)), ContractError);
  EXPECT_THROW(OperatorSystem(g.sparse(3, 2), g.spd(2), SparseMatrix::diagonal(Vector{1.0, 0.0, 1.0})),
               NotSpdError);
}

TEST(Abstract, GeneratorIsDeterministic) {
  RandomSystemGenerator a(42), b(42);
  EXPECT_EQ(a.vector(5), b.vector(5));
  const SparseMatrix sa = a.sparse(6, 6), sb = b.sparse(6, 6);
  EXPECT_TRUE(std::equal(sa.values().begin(), sa.values().end(), sb.values().begin(), sb.values().end()));
  EXPECT_EQ(a.spd(4).max_asymmetry(), 0.0);
}
