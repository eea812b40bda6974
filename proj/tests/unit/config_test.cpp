#include <gtest/gtest.h>

#include <sstream>

#include "eqfem/config.hpp"
#include "eqfem/error.hpp"

using namespace eqfem;

namespace {

ManufacturedCase parse(const std::string& text) {
  std::istringstream in(text);
  return parse_problem(in);
}

std::size_t error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(Config, MinimalReactionDiffusion) {
  const ManufacturedCase c = parse("[domain]\nn = 4\n[source]\nf = 1\n");
  const RdCase& rd = std::get<RdCase>(c);
  EXPECT_EQ(rd.id, "config");
  const Mesh m = rd.initial_mesh();
  EXPECT_EQ(m.num_triangles(), 32u);
  for (std::size_t e : m.boundary_edges()) EXPECT_EQ(m.boundary_tag(e).kind, BoundaryKind::Dirichlet);
  EXPECT_DOUBLE_EQ(rd.problem.f({0.5, 0.5}, 0), 1.0);
  EXPECT_FALSE(rd.exact.has_value());
}

TEST(Config, RegionsAndOverrides) {
  const std::string text =
      "# two regions split at x = 0.5\n"
      "[domain]\n"
      "shape = square\n"
      "n = 4\n"
      "diagonal = anti\n"
      "[regions]\n"
      "x_breaks = 0.5\n"
      "[coefficients]\n"
      "kind = rd\n"
      "alpha = 1 0 0 1\n"
      "alpha.1 = 2 0 0 3\n"
      "rho = 1\n"
      "rho.1 = 10\n"
      "gamma = 4\n"
      "[source]\n"
      "f = 1\n"
      "f.1 = -2\n"
      "[boundary]\n"
      "all = neumann\n"
      "left = robin\n"
      "bottom = dirichlet\n";
  const RdCase rd = std::get<RdCase>(parse(text));
  EXPECT_EQ(rd.region({0.25, 0.5}), 0);
  EXPECT_EQ(rd.region({0.75, 0.5}), 1);
  EXPECT_DOUBLE_EQ(rd.problem.alpha.at(1).yy, 3.0);
  EXPECT_DOUBLE_EQ(rd.problem.rho.at(0), 1.0);
  EXPECT_DOUBLE_EQ(rd.problem.rho.at(1), 10.0);
  EXPECT_DOUBLE_EQ(rd.problem.gamma, 4.0);
  EXPECT_DOUBLE_EQ(rd.problem.f({0.75, 0.5}, 1), -2.0);
  const Mesh m = rd.initial_mesh();
  for (std::size_t e : m.boundary_edges()) {
    const Vec2 mid = m.edge_midpoint(e);
    const BoundaryKind expected =
        mid.y < 1e-12 ? BoundaryKind::Dirichlet : (mid.x < 1e-12 ? BoundaryKind::Robin : BoundaryKind::Neumann);
    EXPECT_EQ(m.boundary_tag(e).kind, expected);
  }
}

TEST(Config, EddyCurrentOnLShape) {
  const std::string text =
      "[domain]\nshape = lshape\nn = 8\n"
      "[regions]\ny_breaks = 0.5\n"
      "[coefficients]\nkind = ec\neps = 1 0 0 1\nmu = 1000\nmu.1 = 1\n"
      "[source]\nj = 1 0\n";
  const EcCase ec = std::get<EcCase>(parse(text));
  EXPECT_EQ(ec.initial_mesh().num_triangles(), 96u);
  EXPECT_DOUBLE_EQ(ec.problem.mu.at(0), 1000.0);
  EXPECT_DOUBLE_EQ(ec.problem.mu.at(1), 1.0);
  EXPECT_DOUBLE_EQ(ec.problem.j({0.2, 0.2}, 0).x, 1.0);
  EXPECT_EQ(ec.region({0.2, 0.8}), 1);
}

TEST(Config, SolvesEndToEnd) {
  const RdCase rd = std::get<RdCase>(parse("[domain]\nn = 6\n[source]\nf = 1\n"));
  const RdSolution s = solve_rd(rd.problem, std::make_shared<const Mesh>(rd.initial_mesh()));
  double max_u = 0.0;
  for (double v : s.u.coeffs) max_u = std::max(max_u, v);
  EXPECT_GT(max_u, 0.0);
  EXPECT_LT(max_u, 0.125);
}

TEST(Config, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("[domain]\nn = 4\n[nope]\n"), 3u);
  EXPECT_EQ(error_line("n = 4\n"), 1u);
  EXPECT_EQ(error_line("[domain]\n\n# c\nn = four\n"), 4u);
  EXPECT_EQ(error_line("[domain]\nn = 3\nshape = lshape\n"), 2u);
  EXPECT_EQ(error_line("[coefficients]\nalpha = 1 2 2 1\n"), 2u);
  EXPECT_EQ(error_line("[coefficients]\nalpha = 1 0 0\n"), 2u);
  EXPECT_EQ(error_line("[coefficients]\nrho = -1\n"), 2u);
  EXPECT_EQ(error_line("[coefficients]\nrho.3 = 1\n"), 2u);
  EXPECT_EQ(error_line("[coefficients]\nkind = ec\nalpha = 1 0 0 1\n"), 3u);
  EXPECT_EQ(error_line("[boundary]\nleft = sticky\n"), 2u);
  EXPECT_EQ(error_line("[coefficients]\nkind = ec\n[boundary]\nleft = robin\n"), 4u);
  EXPECT_EQ(error_line("[domain]\nn = 4\nn = 5\n"), 3u);
  EXPECT_EQ(error_line("[domain\n"), 1u);
  EXPECT_EQ(error_line("[regions]\nx_breaks = 0.6 0.2\n"), 2u);
  EXPECT_EQ(error_line("[source]\nj = 1 0\n"), 2u);
}

TEST(Config, MissingFile) { EXPECT_THROW(load_problem("/nonexistent/problem.ini"), Error); }
