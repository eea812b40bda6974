#include "eqfem/problems.hpp"

#include <cmath>
#include <numbers>

#include "eqfem/error.hpp"
#include "eqfem/quadrature.hpp"

namespace eqfem {

namespace {

constexpr double pi = std::numbers::pi;

BoundaryFn all_of(BoundaryKind kind) {
  return [kind](Vec2) { return BoundaryTag{kind, 0}; };
}

// part: 0 bottom, 1 right, 2 top, 3 left
int square_side(Vec2 m) {
  const double tol = 1e-12;
  if (std::abs(m.y) < tol) return 0;
  if (std::abs(m.x - 1.0) < tol) return 1;
  if (std::abs(m.y - 1.0) < tol) return 2;
  return 3;
}

RdCase rd_poly_2d() {
  RdCase c;
  c.id = "rd_poly_2d";
  c.region = [](Vec2 x) { return x.x < 0.25 ? 0 : (x.x < 0.75 ? 1 : 2); };
  c.boundary = all_of(BoundaryKind::Dirichlet);
  const PiecewiseScalar rho(std::map<int, double>{{0, 1.0}, {1, 10.0}, {2, 25.0}});
  c.problem.alpha = PiecewiseTensor(Mat2::diag(1.0, 5.0));
  c.problem.rho = rho;
  auto u = [](Vec2 x, int) { return x.x * (1.0 - x.x) * x.y * (1.0 - x.y); };
  auto grad = [](Vec2 x, int) {
    return Vec2{(1.0 - 2.0 * x.x) * x.y * (1.0 - x.y), x.x * (1.0 - x.x) * (1.0 - 2.0 * x.y)};
  };
  auto div_p = [](Vec2 x, int) { return -2.0 * x.y * (1.0 - x.y) - 10.0 * x.x * (1.0 - x.x); };
  c.problem.f = [rho, u, div_p](Vec2 x, int r) { return rho.at(r) * u(x, r) - div_p(x, r); };
  c.exact = RdExact{u, grad,
                    [grad](Vec2 x, int r) {
                      const Vec2 g = grad(x, r);
                      return Vec2{g.x, 5.0 * g.y};
                    },
                    div_p};
  const auto region = c.region;
  const auto boundary = c.boundary;
  c.initial_mesh = [region, boundary] { return rect_structured(10, 10, Diagonal::Main, region, boundary); };
  return c;
}

RdCase rd_linear_inhomo() {
  RdCase c;
  c.id = "rd_linear_inhomo";
  c.region = [](Vec2) { return 0; };
  c.boundary = [](Vec2 m) {
    const int side = square_side(m);
    return BoundaryTag{side == 1 || side == 3 ? BoundaryKind::Dirichlet : BoundaryKind::Neumann, side};
  };
  c.problem.alpha = PiecewiseTensor(Mat2::identity());
  c.problem.rho = PiecewiseScalar(1.0);
  auto u = [](Vec2 x, int) { return 1.0 + x.x; };
  c.problem.f = u;
  c.problem.dirichlet = u;
  c.exact = RdExact{u, [](Vec2, int) { return Vec2{1.0, 0.0}; }, [](Vec2, int) { return Vec2{1.0, 0.0}; },
                    [](Vec2, int) { return 0.0; }};
  const auto region = c.region;
  const auto boundary = c.boundary;
  c.initial_mesh = [region, boundary] { return rect_structured(10, 10, Diagonal::Main, region, boundary); };
  return c;
}

constexpr double robin_gamma = 2.0;

// a(x) = e^{gx}(1 - x^2) satisfies -a'(0) + g a(0) = 0 and a(1) = 0.
double robin_a(double x) { return std::exp(robin_gamma * x) * (1.0 - x * x); }
double robin_da(double x) { return std::exp(robin_gamma * x) * (robin_gamma * (1.0 - x * x) - 2.0 * x); }
double robin_dda(double x) {
  const double g = robin_gamma;
  return std::exp(g * x) * (g * g * (1.0 - x * x) - 4.0 * g * x - 2.0);
}

RdCase rd_robin() {
  RdCase c;
  c.id = "rd_robin";
  c.region = [](Vec2) { return 0; };
  c.boundary = [](Vec2 m) {
    const int side = square_side(m);
    return BoundaryTag{side == 3 ? BoundaryKind::Robin : BoundaryKind::Dirichlet, side};
  };
  c.problem.alpha = PiecewiseTensor(Mat2::identity());
  c.problem.rho = PiecewiseScalar(1.0);
  c.problem.gamma = robin_gamma;
  auto u = [](Vec2 x, int) { return robin_a(x.x) * std::sin(pi * x.y); };
  auto grad = [](Vec2 x, int) {
    return Vec2{robin_da(x.x) * std::sin(pi * x.y), robin_a(x.x) * pi * std::cos(pi * x.y)};
  };
  auto lap = [](Vec2 x, int) { return (robin_dda(x.x) - pi * pi * robin_a(x.x)) * std::sin(pi * x.y); };
  c.problem.f = [u, lap](Vec2 x, int r) { return u(x, r) - lap(x, r); };
  c.exact = RdExact{u, grad, grad, lap};
  const auto region = c.region;
  const auto boundary = c.boundary;
  c.initial_mesh = [region, boundary] { return rect_structured(10, 10, Diagonal::Main, region, boundary); };
  return c;
}

// Example 4 fields on x1 > x2; zero elsewhere.
struct Ex4 {
  static double q(Vec2 v) {
    const double x = v.x, y = v.y;
    return y * (x - 1.0) * (x - 1.0) * (x - y) * (x - y);
  }
  static Vec2 e(Vec2 v) {
    const double x = v.x, y = v.y;
    return {std::sin(2.0 * pi * x) + 2.0 * pi * std::cos(2.0 * pi * x) * (x - y),
            std::sin(q(v)) - std::sin(2.0 * pi * x)};
  }
  static double h(Vec2 v) {
    const double x = v.x, y = v.y;
    return 2.0 * y * (x - y) * (x - 1.0) * (2.0 * x - y - 1.0) * std::cos(q(v));
  }
  static Vec2 grad_h(Vec2 v) {
    const double x = v.x, y = v.y;
    const double a = x - 1.0, b = x - y, c = 2.0 * x - y - 1.0;
    const double p = 2.0 * y * a * b * c;
    const double px = 2.0 * y * (b * c + a * c + 2.0 * a * b);
    const double py = 2.0 * a * b * c + 2.0 * y * a * (-c - b);
    const double qx = y * (2.0 * a * b * b + 2.0 * a * a * b);
    const double qy = a * a * b * b - 2.0 * y * a * a * b;
    const double cq = std::cos(q(v)), sq = std::sin(q(v));
    return {px * cq - p * sq * qx, py * cq - p * sq * qy};
  }
};

EcCase ec_ex4() {
  EcCase c;
  c.id = "ec_ex4";
  c.region = [](Vec2 x) { return x.x > x.y ? 1 : 0; };
  c.boundary = all_of(BoundaryKind::Neumann);
  c.problem.eps = PiecewiseTensor(Mat2::identity());
  c.problem.mu = PiecewiseScalar(1.0);
  EcExact ex;
  ex.e = [](Vec2 x, int r) { return r == 1 ? Ex4::e(x) : Vec2{}; };
  ex.h = [](Vec2 x, int r) { return r == 1 ? Ex4::h(x) : 0.0; };
  ex.rot_e = ex.h;
  ex.grad_h = [](Vec2 x, int r) { return r == 1 ? Ex4::grad_h(x) : Vec2{}; };
  c.exact = ex;
  // J = perp grad H + E
  c.problem.j = [](Vec2 x, int r) {
    if (r != 1) return Vec2{};
    const Vec2 g = Ex4::grad_h(x);
    return perp_grad(g) + Ex4::e(x);
  };
  const auto region = c.region;
  const auto boundary = c.boundary;
  c.initial_mesh = [region, boundary] { return rect_structured(20, 20, Diagonal::Main, region, boundary); };
  return c;
}

}  // namespace

ManufacturedCase manufactured_registry(std::string_view id) {
  if (id == "rd_poly_2d") return rd_poly_2d();
  if (id == "ec_ex4") return ec_ex4();
  if (id == "rd_linear_inhomo") return rd_linear_inhomo();
  if (id == "rd_robin") return rd_robin();
  throw ContractError("manufactured_registry: unknown case '" + std::string(id) + "'");
}

std::vector<std::string> manufactured_ids() { return {"rd_poly_2d", "ec_ex4", "rd_linear_inhomo", "rd_robin"}; }

EcCase scenario_ex7() {
  EcCase c;
  c.id = "ex7";
  c.region = [](Vec2) { return 0; };
  c.boundary = all_of(BoundaryKind::Dirichlet);
  c.problem.eps = PiecewiseTensor(Mat2::identity());
  c.problem.mu = PiecewiseScalar(1000.0);
  c.problem.j = [](Vec2, int) { return Vec2{1.0, 0.0}; };
  const auto region = c.region;
  const auto boundary = c.boundary;
  c.initial_mesh = [region, boundary] { return lshape_structured(8, Diagonal::Main, region, boundary); };
  return c;
}

EcCase scenario_ex8() {
  EcCase c;
  c.id = "ex8";
  // bit 0: cross (coefficients), bit 1: band (source)
  c.region = [](Vec2 x) {
    const bool cross = (x.y > 0.4 && x.y < 0.6) || (x.x > 0.3 && x.x < 0.5);
    const bool band = x.y > 0.35 && x.y < 0.65;
    return (cross ? 1 : 0) | (band ? 2 : 0);
  };
  c.boundary = [](Vec2 m) {
    const int side = square_side(m);
    return BoundaryTag{side == 1 ? BoundaryKind::Dirichlet : BoundaryKind::Neumann, side};
  };
  std::map<int, Mat2> eps;
  std::map<int, double> mu;
  for (int r = 0; r < 4; ++r) {
    eps[r] = Mat2::identity((r & 1) ? 1.0 : 100.0);
    mu[r] = (r & 1) ? 1000.0 : 1.0;
  }
  c.problem.eps = PiecewiseTensor(eps);
  c.problem.mu = PiecewiseScalar(mu);
  c.problem.j = [](Vec2 x, int r) {
    const double xi = std::log(2.0 + x.y);
    return (r & 2) ? Vec2{xi, 0.0} : Vec2{0.0, -xi};
  };
  const auto region = c.region;
  const auto boundary = c.boundary;
  c.initial_mesh = [region, boundary] { return rect_structured(20, 20, Diagonal::Main, region, boundary); };
  return c;
}

RobinPerturbation robin_perturbation(const RdCase& rc) {
  EQFEM_REQUIRE(rc.exact.has_value(), "robin_perturbation: case needs exact fields");
  const RdExact ex = *rc.exact;
  const double g = rc.problem.gamma;
  // phi = e^{g x}(1 - x^2) w(y), w = y^2 (1 - y); chi = perp grad (b(x) b(y)), b(t) = t^2 (1 - t)^2
  auto a = [g](double x) { return std::exp(g * x) * (1.0 - x * x); };
  auto da = [g](double x) { return std::exp(g * x) * (g * (1.0 - x * x) - 2.0 * x); };
  auto dda = [g](double x) { return std::exp(g * x) * (g * g * (1.0 - x * x) - 4.0 * g * x - 2.0); };
  auto w = [](double y) { return y * y * (1.0 - y); };
  auto dw = [](double y) { return 2.0 * y - 3.0 * y * y; };
  auto ddw = [](double y) { return 2.0 - 6.0 * y; };
  auto b = [](double t) { return t * t * (1.0 - t) * (1.0 - t); };
  auto db = [](double t) { return 2.0 * t * (1.0 - t) * (1.0 - 2.0 * t); };

  RobinPerturbation pert;
  pert.u = [=](Vec2 x, int r) { return ex.u(x, r) - a(x.x) * w(x.y); };
  pert.grad_u = [=](Vec2 x, int r) { return ex.grad_u(x, r) - Vec2{da(x.x) * w(x.y), a(x.x) * dw(x.y)}; };
  pert.p = [=](Vec2 x, int r) {
    const Vec2 grad_phi{da(x.x) * w(x.y), a(x.x) * dw(x.y)};
    const Vec2 chi{b(x.x) * db(x.y), -db(x.x) * b(x.y)};
    return ex.p(x, r) - grad_phi - chi;
  };
  pert.div_p = [=](Vec2 x, int r) { return ex.div_p(x, r) - (dda(x.x) * w(x.y) + a(x.x) * ddw(x.y)); };
  return pert;
}

double source_residual(const ManufacturedCase& c, const Mesh& mesh, int degree) {
  const QuadratureRule& rule = triangle_rule(degree);
  double r1 = 0.0, r2 = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const int region = mesh.region(t);
    for (const auto& q : rule.points) {
      const Vec2 x = mesh.map_point(t, q.bary);
      const double w = 2.0 * mesh.area(t) * q.weight;
      if (const auto* rc = std::get_if<RdCase>(&c)) {
        EQFEM_REQUIRE(rc->exact.has_value(), "source_residual: case has no exact fields");
        const auto& ex = *rc->exact;
        const double s = rc->problem.f(x, region) - rc->problem.rho.at(region) * ex.u(x, region) + ex.div_p(x, region);
        const Vec2 d = ex.p(x, region) - rc->problem.alpha.at(region).apply(ex.grad_u(x, region));
        r1 += w * s * s;
        r2 += w * dot(d, d);
      } else {
        const auto& ec = std::get<EcCase>(c);
        EQFEM_REQUIRE(ec.exact.has_value(), "source_residual: case has no exact fields");
        const auto& ex = *ec.exact;
        const Vec2 s = ec.problem.j(x, region) - ec.problem.eps.at(region).apply(ex.e(x, region)) -
                       perp_grad(ex.grad_h(x, region));
        const double d = ex.h(x, region) - ex.rot_e(x, region) / ec.problem.mu.at(region);
        r1 += w * dot(s, s);
        r2 += w * d * d;
      }
    }
  }
  return std::sqrt(r1) + std::sqrt(r2);
}

std::shared_ptr<const FeSpace> rd_primal_space(std::shared_ptr<const Mesh> mesh) {
  return std::make_shared<const FeSpace>(std::move(mesh), SpaceKind::NodalP1,
                                         std::vector<BoundaryKind>{BoundaryKind::Dirichlet});
}
std::shared_ptr<const FeSpace> rd_dual_space(std::shared_ptr<const Mesh> mesh) {
  return std::make_shared<const FeSpace>(std::move(mesh), SpaceKind::EdgeRT0,
                                         std::vector<BoundaryKind>{BoundaryKind::Neumann});
}
std::shared_ptr<const FeSpace> ec_primal_space(std::shared_ptr<const Mesh> mesh) {
  return std::make_shared<const FeSpace>(std::move(mesh), SpaceKind::EdgeN0,
                                         std::vector<BoundaryKind>{BoundaryKind::Dirichlet});
}
std::shared_ptr<const FeSpace> ec_dual_space(std::shared_ptr<const Mesh> mesh) {
  return std::make_shared<const FeSpace>(std::move(mesh), SpaceKind::NodalP1,
                                         std::vector<BoundaryKind>{BoundaryKind::Neumann});
}

namespace {

struct RdSystems {
  std::shared_ptr<const FeSpace> vs, qs;
  ReducedSystem primal, dual;
};

RdSystems build_rd(const RdProblem& problem, const std::shared_ptr<const Mesh>& mesh, const SolveSettings& s) {
  RdSystems sys;
  sys.vs = rd_primal_space(mesh);
  sys.qs = rd_dual_space(mesh);
  const Mesh& m = *mesh;

  SparseMatrix k = add(assemble(*sys.vs, BilinearForm::P1Stiffness, problem.alpha, s.assembly_degree),
                       assemble(*sys.vs, BilinearForm::P1Mass, problem.rho, s.assembly_degree));
  SparseMatrix d = add(assemble(*sys.qs, BilinearForm::RT0DivDiv, problem.rho, s.assembly_degree),
                       assemble(*sys.qs, BilinearForm::RT0Mass, problem.alpha, s.assembly_degree));
  Vector bu = load_p1(*sys.vs, problem.f, s.load_degree);
  Vector bp = load_rt0_div(*sys.qs, problem.f, problem.rho, s.load_degree);

  TripletBuilder robin_u(k.rows(), k.cols()), robin_p(d.rows(), d.cols());
  bool has_robin = false;
  const auto& gauss = edge_gauss2();
  for (const std::size_t e : m.boundary_edges()) {
    const BoundaryTag tag = m.boundary_tag(e);
    const double len = m.edge_length(e);
    const auto [a, b] = m.edges()[e];
    if (tag.kind == BoundaryKind::Robin) {
      has_robin = true;
      const double g = problem.gamma;
      EQFEM_REQUIRE(g > 0.0, "solve_rd: Robin coefficient must be positive");
      robin_u.add(a, a, g * len / 3.0);
      robin_u.add(b, b, g * len / 3.0);
      robin_u.add(a, b, g * len / 6.0);
      robin_u.add(b, a, g * len / 6.0);
      robin_p.add(e, e, 1.0 / (g * len));
    } else if (tag.kind == BoundaryKind::Dirichlet && problem.dirichlet) {
      // int_{Gamma_D} g q.n for the flux basis of edge e
      const int region = m.region(m.edge_triangles(e)[0]);
      const Vec2 va = m.vertex(a), vb = m.vertex(b);
      double integral = 0.0;
      for (std::size_t i = 0; i < 2; ++i) integral += gauss.w[i] * problem.dirichlet(va + gauss.s[i] * (vb - va), region);
      const double orient = dot(m.edge_normal(e), m.outward_normal(e)) > 0.0 ? 1.0 : -1.0;
      bp[e] += orient * integral;
    }
  }
  if (has_robin) {
    k = add(k, robin_u.build());
    d = add(d, robin_p.build());
  }

  Vector trace;
  if (problem.dirichlet) trace = essential_trace(*sys.vs, problem.dirichlet);
  sys.primal = apply_essential(*sys.vs, k, bu, trace);
  sys.dual = apply_essential(*sys.qs, d, bp);
  return sys;
}

}  // namespace

RdSolution solve_rd(const RdProblem& problem, std::shared_ptr<const Mesh> mesh, const SolveSettings& settings) {
  const RdSystems sys = build_rd(problem, mesh, settings);
  RdSolution sol;
  sol.u = FeFunction(sys.vs, expand_solution(sys.primal, solve_spd(sys.primal.matrix, sys.primal.rhs, settings.solver)));
  sol.p = FeFunction(sys.qs, expand_solution(sys.dual, solve_spd(sys.dual.matrix, sys.dual.rhs, settings.solver)));
  return sol;
}

RdSolution iterative_undersolve(const RdProblem& problem, std::shared_ptr<const Mesh> mesh, double crude_tol,
                                const SolveSettings& settings) {
  const RdSystems sys = build_rd(problem, mesh, settings);
  CgOptions cg;
  cg.tol = crude_tol;
  cg.jacobi = false;
  cg.throw_on_stall = false;
  RdSolution sol;
  sol.u = FeFunction(sys.vs, expand_solution(sys.primal, conjugate_gradient(sys.primal.matrix, sys.primal.rhs, cg).x));
  sol.p = FeFunction(sys.qs, expand_solution(sys.dual, conjugate_gradient(sys.dual.matrix, sys.dual.rhs, cg).x));
  return sol;
}

EcSolution solve_ec2d(const Ec2dProblem& problem, std::shared_ptr<const Mesh> mesh, const SolveSettings& settings) {
  for (const std::size_t e : mesh->boundary_edges())
    EQFEM_REQUIRE(mesh->boundary_tag(e).kind != BoundaryKind::Robin,
                  "solve_ec2d: Robin boundary conditions are not supported for the eddy-current problem");
  auto es = ec_primal_space(mesh);
  auto hs = ec_dual_space(mesh);
  const SparseMatrix a = add(assemble(*es, BilinearForm::N0CurlCurl, problem.mu, settings.assembly_degree),
                             assemble(*es, BilinearForm::N0Mass, problem.eps, settings.assembly_degree));
  const SparseMatrix b = add(assemble(*hs, BilinearForm::P1CoGradStiffness, problem.eps, settings.assembly_degree),
                             assemble(*hs, BilinearForm::P1Mass, problem.mu, settings.assembly_degree));
  const ReducedSystem pe = apply_essential(*es, a, load_n0(*es, problem.j, settings.load_degree));
  const ReducedSystem ph = apply_essential(*hs, b, load_p1_cograd(*hs, problem.j, problem.eps, settings.load_degree));
  EcSolution sol;
  sol.e = FeFunction(es, expand_solution(pe, solve_spd(pe.matrix, pe.rhs, settings.solver)));
  sol.h = FeFunction(hs, expand_solution(ph, solve_spd(ph.matrix, ph.rhs, settings.solver)));
  return sol;
}

}  // namespace eqfem
