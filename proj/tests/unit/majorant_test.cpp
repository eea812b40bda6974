#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "eqfem/error.hpp"
#include "eqfem/majorant.hpp"

using namespace eqfem;

namespace {

std::shared_ptr<const Mesh> mesh_ptr(Mesh m) { return std::make_shared<const Mesh>(std::move(m)); }

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

TEST(GaussLegendre, ExactForPolynomials) {
  for (int n = 1; n <= 12; ++n) {
    const LineRule r = gauss_legendre(n);
    ASSERT_EQ(r.s.size(), static_cast<std::size_t>(n));
    EXPECT_NEAR(sum(r.w), 1.0, 1e-14);
    for (int k = 0; k < 2 * n; ++k) {
      double q = 0.0;
      for (int i = 0; i < n; ++i) q += r.w[i] * std::pow(r.s[i], k);
      EXPECT_NEAR(q, 1.0 / (k + 1), 1e-14) << n << " points, degree " << k;
    }
  }
  EXPECT_THROW(gauss_legendre(0), ContractError);
}

TEST(Majorant, RdPartsAndIndicators) {
  const RdCase c = std::get<RdCase>(manufactured_registry("rd_poly_2d"));
  const auto mesh = mesh_ptr(c.initial_mesh());
  const RdSolution s = solve_rd(c.problem, mesh);
  const MajorantReport r = majorant_rd(c.problem, s.u, s.p);
  EXPECT_EQ(r.eta_sq.size(), mesh->num_triangles());
  EXPECT_NEAR(r.part_eq + r.part_flux, r.global, 1e-14 * r.global);
  EXPECT_NEAR(sum(r.eta_sq), r.global, 1e-12 * r.global);
  for (double e : r.eta_sq) EXPECT_GE(e, 0.0);
  EXPECT_GT(r.f_norm_sq, 0.0);
}

TEST(Majorant, RdEqualityAtHighDegree) {
  const RdCase c = std::get<RdCase>(manufactured_registry("rd_poly_2d"));
  const auto mesh = mesh_ptr(c.initial_mesh());
  const RdSolution s = solve_rd(c.problem, mesh);
  MajorantReport r = majorant_rd(c.problem, s.u, s.p);
  const std::vector<double> local = element_errors_rd(c.problem, *c.exact, s.u, s.p);
  const double err = exact_combined_error_rd(c.problem, *c.exact, s.u, s.p);
  EXPECT_NEAR(sum(local), err, 1e-12 * err);
  equality_report(r, err);
  ASSERT_TRUE(r.delta_rel.has_value());
  EXPECT_LE(*r.delta_rel, 1e-12);
  EXPECT_NEAR(*r.normalized, std::sqrt(r.global / r.f_norm_sq), 1e-15);
}

TEST(Majorant, EqualityHoldsForArbitraryPair) {
  // a pair unrelated to the discrete equations: interpolants of shifted fields
  const RdCase c = std::get<RdCase>(manufactured_registry("rd_poly_2d"));
  const auto mesh = mesh_ptr(c.initial_mesh());
  const FeFunction u = interpolate(rd_primal_space(mesh), [](Vec2 x, int) {
    return 3.0 * x.x * x.y * (1 - x.x) * (1 - x.y) * (1 + x.y);
  });
  const FeFunction p = interpolate(rd_dual_space(mesh), [](Vec2 x, int) { return Vec2{x.y, -x.x}; });
  MajorantReport r = majorant_rd(c.problem, u, p);
  equality_report(r, exact_combined_error_rd(c.problem, *c.exact, u, p));
  EXPECT_LE(*r.delta_rel, 1e-12);
}

TEST(Majorant, AveragedFlux) {
  const RdCase c = std::get<RdCase>(manufactured_registry("rd_poly_2d"));
  const auto mesh = mesh_ptr(c.initial_mesh());
  const RdSolution s = solve_rd(c.problem, mesh);
  const FluxField avg = gradient_average(s.u, c.problem.alpha);
  MajorantReport r = majorant_rd(c.problem, s.u, avg);
  equality_report(r, exact_combined_error_rd(c.problem, *c.exact, s.u, avg));
  EXPECT_LE(*r.delta_rel, 1e-12);
  EXPECT_GT(r.global, majorant_rd(c.problem, s.u, s.p).global);
}

TEST(Majorant, EddyCurrentEquality) {
  const EcCase c = std::get<EcCase>(manufactured_registry("ec_ex4"));
  const auto mesh = mesh_ptr(rect_structured(10, 10, Diagonal::Main, c.region, c.boundary));
  const EcSolution s = solve_ec2d(c.problem, mesh);
  MajorantReport r = majorant_ec2d(c.problem, s.e, s.h);
  EXPECT_NEAR(sum(r.eta_sq), r.global, 1e-12 * r.global);
  const double err = exact_combined_error_ec2d(c.problem, *c.exact, s.e, s.h);
  EXPECT_NEAR(sum(element_errors_ec2d(c.problem, *c.exact, s.e, s.h)), err, 1e-12 * err);
  equality_report(r, err);
  EXPECT_LE(*r.delta_rel, 1e-10);
}

TEST(Majorant, ZeroPairGivesLoadNorm) {
  const RdCase c = std::get<RdCase>(manufactured_registry("rd_poly_2d"));
  const auto mesh = mesh_ptr(c.initial_mesh());
  const MajorantReport r = majorant_rd(c.problem, FeFunction::zero(rd_primal_space(mesh)),
                                       FeFunction::zero(rd_dual_space(mesh)));
  EXPECT_NEAR(r.global, r.f_norm_sq, 1e-14 * r.f_norm_sq);
  EXPECT_EQ(r.part_flux, 0.0);
}

TEST(Majorant, ReportWithoutLoad) {
  MajorantReport r;
  r.global = 4.0;
  equality_report(r, 1.0);
  EXPECT_DOUBLE_EQ(*r.delta, 1.0);
  EXPECT_FALSE(r.delta_rel.has_value());
  EXPECT_FALSE(r.normalized.has_value());
  r.f_norm_sq = 16.0;
  normalize(r);
  EXPECT_DOUBLE_EQ(*r.normalized, 0.5);
}

TEST(Majorant, RejectsWrongSpaces) {
  const RdCase c = std::get<RdCase>(manufactured_registry("rd_poly_2d"));
  const auto mesh = mesh_ptr(c.initial_mesh());
  const FeFunction u = FeFunction::zero(rd_primal_space(mesh));
  EXPECT_THROW(majorant_rd(c.problem, u, u), ContractError);
  const auto other = mesh_ptr(rect_structured(3, 3, Diagonal::Main, c.region, c.boundary));
  EXPECT_THROW(majorant_rd(c.problem, u, FeFunction::zero(rd_dual_space(other))), ContractError);
}

TEST(Majorant, RobinEquality) {
  const RdCase c = std::get<RdCase>(manufactured_registry("rd_robin"));
  const Mesh mesh = c.initial_mesh();
  const RobinPerturbation pert = robin_perturbation(c);
  const RobinCheckResult r =
      robin_equality_check(mesh, c.problem, *c.exact, AnalyticPair{pert.u, pert.grad_u, pert.p, pert.div_p});
  EXPECT_GT(r.combined_error_sq, 0.0);
  EXPECT_GT(r.boundary_u_sq, 0.0);
  EXPECT_LE(std::abs(r.lhs - r.rhs), 1e-10 * r.rhs);
}

TEST(Majorant, RobinHypothesisViolation) {
  const RdCase c = std::get<RdCase>(manufactured_registry("rd_robin"));
  const Mesh mesh = c.initial_mesh();
  const RdExact& ex = *c.exact;
  // shifting u breaks the Dirichlet hypothesis
  const AnalyticPair shifted{[u = ex.u](Vec2 x, int r) { return u(x, r) + 0.1; }, ex.grad_u, ex.p, ex.div_p};
  EXPECT_THROW(robin_equality_check(mesh, c.problem, ex, shifted), ContractError);
}
