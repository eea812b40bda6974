#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "eqfem/fem.hpp"
#include "eqfem/mesh.hpp"
#include "eqfem/solver.hpp"

namespace eqfem {

/// -div(alpha grad u) + rho u = f with u = g on Dirichlet edges, n.p = 0 on Neumann edges and
/// n.p + gamma u = 0 on Robin edges (p = alpha grad u). The boundary partition comes from the mesh tags.
struct RdProblem {
  PiecewiseTensor alpha;
  PiecewiseScalar rho;
  ScalarFn f;
  ScalarFn dirichlet;  ///< empty means homogeneous; must be P1-representable on the boundary
  double gamma = 1.0;  ///< Robin coefficient
};

/// rot(mu^{-1} rot E) + eps E = J with n x E = 0 on Dirichlet edges and H = mu^{-1} rot E = 0 on
/// Neumann edges.
struct Ec2dProblem {
  PiecewiseTensor eps;
  PiecewiseScalar mu;
  VectorFn j;
};

struct RdExact {
  ScalarFn u;
  VectorFn grad_u;
  VectorFn p;
  ScalarFn div_p;
};

struct EcExact {
  VectorFn e;
  ScalarFn rot_e;
  ScalarFn h;
  VectorFn grad_h;
};

struct RdCase {
  std::string id;
  RdProblem problem;
  std::optional<RdExact> exact;
  RegionFn region;
  BoundaryFn boundary;
  std::function<Mesh()> initial_mesh;
};

struct EcCase {
  std::string id;
  Ec2dProblem problem;
  std::optional<EcExact> exact;
  RegionFn region;
  BoundaryFn boundary;
  std::function<Mesh()> initial_mesh;
};

using ManufacturedCase = std::variant<RdCase, EcCase>;

/// rd_poly_2d, ec_ex4, rd_linear_inhomo, rd_robin. Unknown ids throw ContractError.
ManufacturedCase manufactured_registry(std::string_view id);
std::vector<std::string> manufactured_ids();

/// L-shape, eps = I, mu = 1000, J = (1, 0), Dirichlet on the whole boundary; 96-element start mesh.
EcCase scenario_ex7();
/// Unit square with the cross/band data and Dirichlet only on x1 = 1; 800-element start mesh.
EcCase scenario_ex8();

/// Perturbation used by the Robin equality check for rd_robin: u~ = u - phi, p~ = p - grad phi - chi
/// with phi satisfying the homogeneous Robin relation and chi divergence-free with zero normal trace.
struct RobinPerturbation {
  ScalarFn u;
  VectorFn grad_u;
  VectorFn p;
  ScalarFn div_p;
};
RobinPerturbation robin_perturbation(const RdCase& robin_case);

/// Sum of the L2 norms of the two defining residuals of the manufactured fields, by quadrature.
double source_residual(const ManufacturedCase& c, const Mesh& mesh, int degree = 10);

struct SolveSettings {
  SolveOptions solver;
  int assembly_degree = 4;
  int load_degree = 10;
};

struct RdSolution {
  FeFunction u;  ///< P1, essential on Dirichlet edges
  FeFunction p;  ///< RT0, essential (zero flux) on Neumann edges
};

struct EcSolution {
  FeFunction e;  ///< N0, essential on Dirichlet edges
  FeFunction h;  ///< P1, essential on Neumann edges
};

std::shared_ptr<const FeSpace> rd_primal_space(std::shared_ptr<const Mesh> mesh);
std::shared_ptr<const FeSpace> rd_dual_space(std::shared_ptr<const Mesh> mesh);
std::shared_ptr<const FeSpace> ec_primal_space(std::shared_ptr<const Mesh> mesh);
std::shared_ptr<const FeSpace> ec_dual_space(std::shared_ptr<const Mesh> mesh);

RdSolution solve_rd(const RdProblem& problem, std::shared_ptr<const Mesh> mesh, const SolveSettings& settings = {});
EcSolution solve_ec2d(const Ec2dProblem& problem, std::shared_ptr<const Mesh> mesh,
                      const SolveSettings& settings = {});

/// solve_rd with both systems solved by unpreconditioned CG stopped at relative residual
/// crude_tol (capped at 10 n iterations, no error on the cap).
RdSolution iterative_undersolve(const RdProblem& problem, std::shared_ptr<const Mesh> mesh, double crude_tol = 1e-4,
                                const SolveSettings& settings = {});

}  // namespace eqfem
