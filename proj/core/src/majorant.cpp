#include "eqfem/majorant.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "eqfem/error.hpp"
#include "eqfem/parallel.hpp"
#include "eqfem/quadrature.hpp"

namespace eqfem {

namespace {

using Bary = std::array<double, 3>;
using Pair = std::array<double, 2>;

// Integrates the two-part density term(t, bary, x, region) over every element.
template <class Term>
std::vector<Pair> integrate_elements(const Mesh& mesh, int degree, const Term& term) {
  const QuadratureRule& rule = triangle_rule(degree);
  std::vector<Pair> out(mesh.num_triangles(), Pair{0.0, 0.0});
  parallel_for(mesh.num_triangles(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      const int region = mesh.region(t);
      const double jac = 2.0 * mesh.area(t);
      Pair acc{0.0, 0.0};
      for (const auto& q : rule.points) {
        const Pair v = term(t, q.bary, mesh.map_point(t, q.bary), region);
        acc[0] += q.weight * v[0];
        acc[1] += q.weight * v[1];
      }
      out[t] = {jac * acc[0], jac * acc[1]};
    }
  });
  return out;
}

void check_mesh(const Mesh& a, const Mesh& b, const char* what) {
  if (&a != &b) throw ContractError(std::string(what) + ": approximations live on different meshes");
}

const Mesh& flux_mesh(const FluxField& p) {
  if (const auto* f = std::get_if<FeFunction>(&p)) {
    if (f->space->kind() != SpaceKind::EdgeRT0) throw ContractError("flux must be RT0 or a P1 vector field");
    return f->mesh();
  }
  return *std::get<VectorP1Function>(p).mesh;
}

Vec2 flux_value(const FluxField& p, std::size_t t, const Bary& b) {
  if (const auto* f = std::get_if<FeFunction>(&p)) return eval_edge(*f, t, b);
  return eval_vp1(std::get<VectorP1Function>(p), t, b);
}

double flux_div(const FluxField& p, std::size_t t) {
  if (const auto* f = std::get_if<FeFunction>(&p)) return div_rt0(*f, t);
  return div_vp1(std::get<VectorP1Function>(p), t);
}

MajorantReport finish(const std::vector<Pair>& parts, double f_norm_sq) {
  MajorantReport r;
  r.eta_sq.resize(parts.size());
  std::vector<double> eq(parts.size()), flux(parts.size());
  for (std::size_t t = 0; t < parts.size(); ++t) {
    eq[t] = parts[t][0];
    flux[t] = parts[t][1];
    r.eta_sq[t] = parts[t][0] + parts[t][1];
  }
  r.part_eq = pairwise_sum(eq);
  r.part_flux = pairwise_sum(flux);
  r.global = pairwise_sum(r.eta_sq);
  r.f_norm_sq = f_norm_sq;
  return r;
}

std::vector<double> totals(const std::vector<Pair>& parts) {
  std::vector<double> out(parts.size());
  for (std::size_t t = 0; t < parts.size(); ++t) out[t] = parts[t][0] + parts[t][1];
  return out;
}

}  // namespace

MajorantReport majorant_rd(const RdProblem& problem, const FeFunction& u, const FluxField& p, int degree) {
  EQFEM_REQUIRE(u.space && u.space->kind() == SpaceKind::NodalP1, "majorant_rd: primal must be P1");
  const Mesh& mesh = u.mesh();
  check_mesh(mesh, flux_mesh(p), "majorant_rd");
  const auto parts = integrate_elements(mesh, degree, [&](std::size_t t, const Bary& b, Vec2 x, int r) {
    const double rho = problem.rho.at(r);
    const Mat2& alpha = problem.alpha.at(r);
    const double s = problem.f(x, r) - rho * eval_p1(u, t, b) + flux_div(p, t);
    const Vec2 d = flux_value(p, t, b) - alpha.apply(grad_p1(u, t));
    return Pair{s * s / rho, dot(d, problem.alpha.inverse_at(r).apply(d))};
  });
  const auto fparts = integrate_elements(mesh, degree, [&](std::size_t, const Bary&, Vec2 x, int r) {
    const double f = problem.f(x, r);
    return Pair{f * f / problem.rho.at(r), 0.0};
  });
  return finish(parts, pairwise_sum(totals(fparts)));
}

MajorantReport majorant_ec2d(const Ec2dProblem& problem, const FeFunction& e, const FeFunction& h, int degree) {
  EQFEM_REQUIRE(e.space && e.space->kind() == SpaceKind::EdgeN0, "majorant_ec2d: primal must be N0");
  EQFEM_REQUIRE(h.space && h.space->kind() == SpaceKind::NodalP1, "majorant_ec2d: dual must be P1");
  const Mesh& mesh = e.mesh();
  check_mesh(mesh, h.mesh(), "majorant_ec2d");
  const auto parts = integrate_elements(mesh, degree, [&](std::size_t t, const Bary& b, Vec2 x, int r) {
    const double mu = problem.mu.at(r);
    const Vec2 s = problem.j(x, r) - problem.eps.at(r).apply(eval_edge(e, t, b)) - cograd_p1(h, t);
    const double d = eval_p1(h, t, b) - rot_n0(e, t) / mu;
    return Pair{dot(s, problem.eps.inverse_at(r).apply(s)), mu * d * d};
  });
  const auto fparts = integrate_elements(mesh, degree, [&](std::size_t, const Bary&, Vec2 x, int r) {
    const Vec2 j = problem.j(x, r);
    return Pair{dot(j, problem.eps.inverse_at(r).apply(j)), 0.0};
  });
  return finish(parts, pairwise_sum(totals(fparts)));
}

std::vector<double> element_errors_rd(const RdProblem& problem, const RdExact& exact, const FeFunction& u,
                                      const FluxField& p, int degree) {
  EQFEM_REQUIRE(exact.u && exact.grad_u && exact.p && exact.div_p, "element_errors_rd: incomplete exact fields");
  const Mesh& mesh = u.mesh();
  check_mesh(mesh, flux_mesh(p), "element_errors_rd");
  return totals(integrate_elements(mesh, degree, [&](std::size_t t, const Bary& b, Vec2 x, int r) {
    const double rho = problem.rho.at(r);
    const double eu = exact.u(x, r) - eval_p1(u, t, b);
    const Vec2 eg = exact.grad_u(x, r) - grad_p1(u, t);
    const Vec2 ep = exact.p(x, r) - flux_value(p, t, b);
    const double ed = exact.div_p(x, r) - flux_div(p, t);
    return Pair{rho * eu * eu + dot(eg, problem.alpha.at(r).apply(eg)),
                dot(ep, problem.alpha.inverse_at(r).apply(ep)) + ed * ed / rho};
  }));
}

std::vector<double> element_errors_ec2d(const Ec2dProblem& problem, const EcExact& exact, const FeFunction& e,
                                        const FeFunction& h, int degree) {
  EQFEM_REQUIRE(exact.e && exact.rot_e && exact.h && exact.grad_h, "element_errors_ec2d: incomplete exact fields");
  const Mesh& mesh = e.mesh();
  check_mesh(mesh, h.mesh(), "element_errors_ec2d");
  return totals(integrate_elements(mesh, degree, [&](std::size_t t, const Bary& b, Vec2 x, int r) {
    const double mu = problem.mu.at(r);
    const Vec2 ee = exact.e(x, r) - eval_edge(e, t, b);
    const double er = exact.rot_e(x, r) - rot_n0(e, t);
    const double eh = exact.h(x, r) - eval_p1(h, t, b);
    const Vec2 ec = perp_grad(exact.grad_h(x, r)) - cograd_p1(h, t);
    return Pair{dot(ee, problem.eps.at(r).apply(ee)) + er * er / mu,
                mu * eh * eh + dot(ec, problem.eps.inverse_at(r).apply(ec))};
  }));
}

double exact_combined_error_rd(const RdProblem& problem, const RdExact& exact, const FeFunction& u,
                               const FluxField& p, int degree) {
  return pairwise_sum(element_errors_rd(problem, exact, u, p, degree));
}

double exact_combined_error_ec2d(const Ec2dProblem& problem, const EcExact& exact, const FeFunction& e,
                                 const FeFunction& h, int degree) {
  return pairwise_sum(element_errors_ec2d(problem, exact, e, h, degree));
}

void normalize(MajorantReport& report) {
  if (report.f_norm_sq > 0.0) report.normalized = std::sqrt(report.global / report.f_norm_sq);
}

void equality_report(MajorantReport& report, std::optional<double> combined_error_sq) {
  normalize(report);
  report.combined_error_sq = combined_error_sq;
  if (!combined_error_sq) return;
  report.delta = std::abs(std::sqrt(report.global) - std::sqrt(std::max(0.0, *combined_error_sq)));
  if (report.f_norm_sq > 0.0) report.delta_rel = *report.delta / std::sqrt(report.f_norm_sq);
}

LineRule gauss_legendre(int points) {
  EQFEM_REQUIRE(points >= 1 && points <= 64, "gauss_legendre: 1..64 points");
  LineRule rule;
  const int n = points;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.s.push_back(0.5 * (1.0 - x));
    rule.w.push_back(1.0 / ((1.0 - x * x) * dp * dp));
  }
  return rule;
}

RobinCheckResult robin_equality_check(const Mesh& mesh, const RdProblem& problem, const RdExact& exact,
                                      const AnalyticPair& approx, int degree, int edge_points) {
  EQFEM_REQUIRE(approx.u && approx.grad_u && approx.p && approx.div_p, "robin_equality_check: incomplete pair");
  EQFEM_REQUIRE(problem.gamma > 0.0, "robin_equality_check: gamma must be positive");
  RobinCheckResult res;
  const auto err = integrate_elements(mesh, degree, [&](std::size_t, const Bary&, Vec2 x, int r) {
    const double rho = problem.rho.at(r);
    const double eu = exact.u(x, r) - approx.u(x, r);
    const Vec2 eg = exact.grad_u(x, r) - approx.grad_u(x, r);
    const Vec2 ep = exact.p(x, r) - approx.p(x, r);
    const double ed = exact.div_p(x, r) - approx.div_p(x, r);
    return Pair{rho * eu * eu + dot(eg, problem.alpha.at(r).apply(eg)),
                dot(ep, problem.alpha.inverse_at(r).apply(ep)) + ed * ed / rho};
  });
  const auto maj = integrate_elements(mesh, degree, [&](std::size_t, const Bary&, Vec2 x, int r) {
    const double rho = problem.rho.at(r);
    const double s = problem.f(x, r) - rho * approx.u(x, r) + approx.div_p(x, r);
    const Vec2 d = approx.p(x, r) - problem.alpha.at(r).apply(approx.grad_u(x, r));
    return Pair{s * s / rho, dot(d, problem.alpha.inverse_at(r).apply(d))};
  });
  res.combined_error_sq = pairwise_sum(totals(err));
  res.rhs = pairwise_sum(totals(maj));

  const LineRule line = gauss_legendre(edge_points);
  std::vector<double> bu, bf;
  double scale = 0.0, worst = 0.0;
  std::size_t worst_edge = npos;
  for (const std::size_t e : mesh.boundary_edges()) {
    const BoundaryTag tag = mesh.boundary_tag(e);
    const int r = mesh.region(mesh.edge_triangles(e)[0]);
    const auto [a, b] = mesh.edges()[e];
    const Vec2 va = mesh.vertex(a), vb = mesh.vertex(b);
    const Vec2 n = mesh.outward_normal(e);
    const double len = mesh.edge_length(e);
    for (std::size_t i = 0; i < line.s.size(); ++i) {
      const Vec2 x = va + line.s[i] * (vb - va);
      const double eu = exact.u(x, r) - approx.u(x, r);
      const double en = dot(n, exact.p(x, r) - approx.p(x, r));
      scale = std::max({scale, std::abs(exact.u(x, r)), std::abs(dot(n, exact.p(x, r)))});
      double violation = 0.0;
      switch (tag.kind) {
        case BoundaryKind::Dirichlet: violation = std::abs(eu); break;
        case BoundaryKind::Neumann: violation = std::abs(en); break;
        case BoundaryKind::Robin:
          violation = std::abs(en + problem.gamma * eu);
          bu.push_back(len * line.w[i] * problem.gamma * eu * eu);
          bf.push_back(len * line.w[i] * en * en / problem.gamma);
          break;
        case BoundaryKind::None: break;
      }
      if (violation > worst) worst = violation, worst_edge = e;
    }
  }
  const double tol = 1e-10 * std::max(1.0, scale);
  if (worst > tol)
    throw ContractError("robin_equality_check: boundary hypothesis violated on edge " + std::to_string(worst_edge));
  res.boundary_u_sq = pairwise_sum(bu);
  res.boundary_flux_sq = pairwise_sum(bf);
  res.lhs = res.combined_error_sq + res.boundary_u_sq + res.boundary_flux_sq;
  res.difference = std::abs(res.lhs - res.rhs);
  return res;
}

}  // namespace eqfem
