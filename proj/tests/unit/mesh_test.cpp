#include <gtest/gtest.h>

#include <cmath>

#include "eqfem/error.hpp"
#include "eqfem/mesh.hpp"

using namespace eqfem;

namespace {

long euler_characteristic(const Mesh& m) {
  return static_cast<long>(m.num_vertices()) - static_cast<long>(m.num_edges()) +
         static_cast<long>(m.num_triangles());
}

}  // namespace

TEST(Mesh, SingleCell) {
  const Mesh m = rect_structured(1, 1);
  EXPECT_EQ(m.num_triangles(), 2u);
  EXPECT_EQ(m.num_vertices(), 4u);
  EXPECT_EQ(m.num_edges(), 5u);
  EXPECT_EQ(m.boundary_edges().size(), 4u);
  EXPECT_DOUBLE_EQ(m.total_area(), 1.0);
  EXPECT_TRUE(m.conformity_violation().empty());
}

TEST(Mesh, RectCounts) {
  const Mesh m = rect_structured(20, 20);
  EXPECT_EQ(m.num_triangles(), 800u);
  EXPECT_EQ(m.num_vertices(), 441u);
  EXPECT_EQ(m.num_edges(), 1240u);
  EXPECT_EQ(euler_characteristic(m), 1);
  EXPECT_NEAR(m.total_area(), 1.0, 1e-14);
}

TEST(Mesh, LShapeCounts) {
  const Mesh m8 = lshape_structured(8);
  EXPECT_EQ(m8.num_triangles(), 96u);
  EXPECT_EQ(euler_characteristic(m8), 1);
  EXPECT_NEAR(m8.total_area(), 0.75, 1e-14);
  const Mesh m2 = lshape_structured(2);
  EXPECT_EQ(m2.num_triangles(), 6u);
  EXPECT_EQ(euler_characteristic(m2), 1);
  EXPECT_THROW(lshape_structured(3), ContractError);
}

TEST(Mesh, DiagonalDirection) {
  const Mesh main = rect_structured(1, 1, Diagonal::Main);
  const Mesh anti = rect_structured(1, 1, Diagonal::Anti);
  // vertex ids run row by row: 0=(0,0) 1=(1,0) 2=(0,1) 3=(1,1)
  EXPECT_NE(main.find_edge(0, 3), npos);
  EXPECT_EQ(main.find_edge(1, 2), npos);
  EXPECT_NE(anti.find_edge(1, 2), npos);
  EXPECT_EQ(anti.find_edge(0, 3), npos);
}

TEST(Mesh, OrientationAndAreas) {
  const Mesh m = rect_structured(3, 5, Diagonal::Anti);
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    EXPECT_NEAR(m.area(t), 1.0 / 30.0, 1e-15);
    const auto& g = m.barycentric_gradients(t);
    const Vec2 s = g[0] + g[1] + g[2];
    EXPECT_NEAR(s.x, 0.0, 1e-12);
    EXPECT_NEAR(s.y, 0.0, 1e-12);
  }
}

TEST(Mesh, EdgeSigns) {
  const Mesh m = rect_structured(2, 2);
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const auto& v = m.triangle(t);
    for (std::size_t i = 0; i < 3; ++i) {
      const std::size_t a = v[(i + 1) % 3], b = v[(i + 2) % 3];
      EXPECT_EQ(m.tri_edges(t)[i], m.find_edge(a, b));
      EXPECT_EQ(m.tri_edge_signs(t)[i], a < b ? 1 : -1);
    }
  }
}

TEST(Mesh, OutwardNormals) {
  const Mesh m = rect_structured(4, 4);
  for (std::size_t e : m.boundary_edges()) {
    const Vec2 mid = m.edge_midpoint(e), n = m.outward_normal(e);
    const Vec2 inward = m.centroid(m.edge_triangles(e)[0]) - mid;
    EXPECT_LT(dot(n, inward), 0.0);
    EXPECT_NEAR(std::hypot(n.x, n.y), 1.0, 1e-15);
    EXPECT_NEAR(m.edge_length(e), 0.25, 1e-15);
  }
}

TEST(Mesh, EdgeNormalConvention) {
  const Mesh m = rect_structured(1, 1);
  const std::size_t e = m.find_edge(0, 1);
  const Vec2 t = m.edge_tangent(e), n = m.edge_normal(e);
  EXPECT_DOUBLE_EQ(t.x, 1.0);
  EXPECT_DOUBLE_EQ(n.x, t.y);
  EXPECT_DOUBLE_EQ(n.y, -t.x);
}

TEST(Mesh, RegionAndBoundaryCallbacks) {
  const Mesh m = rect_structured(
      4, 4, Diagonal::Main, [](Vec2 c) { return c.x < 0.5 ? 0 : 7; },
      [](Vec2 mid) {
        if (mid.y < 1e-12) return BoundaryTag{BoundaryKind::Neumann, 1};
        return BoundaryTag{BoundaryKind::Dirichlet, 0};
      });
  std::size_t right = 0;
  for (std::size_t t = 0; t < m.num_triangles(); ++t) right += m.region(t) == 7;
  EXPECT_EQ(right, 16u);
  std::size_t neumann = 0;
  for (std::size_t e : m.boundary_edges()) neumann += m.boundary_tag(e).kind == BoundaryKind::Neumann;
  EXPECT_EQ(neumann, 4u);
  for (std::size_t e = 0; e < m.num_edges(); ++e)
    if (!m.is_boundary_edge(e)) EXPECT_EQ(m.boundary_tag(e).kind, BoundaryKind::None);
}

TEST(Mesh, MapPoint) {
  const Mesh m = rect_structured(2, 2);
  const Vec2 c = m.map_point(3, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  EXPECT_NEAR(c.x, m.centroid(3).x, 1e-15);
  EXPECT_NEAR(c.y, m.centroid(3).y, 1e-15);
  const Vec2 v = m.map_point(3, {0.0, 1.0, 0.0});
  EXPECT_EQ(v, m.vertex(m.triangle(3)[1]));
}

TEST(Mesh, RejectsClockwiseTriangle) {
  std::vector<Vec2> v{{0, 0}, {1, 0}, {0, 1}};
  std::map<EdgeKey, BoundaryTag> tags{{{0, 1}, {BoundaryKind::Dirichlet, 0}},
                                       {{1, 2}, {BoundaryKind::Dirichlet, 0}},
                                       {{0, 2}, {BoundaryKind::Dirichlet, 0}}};
  EXPECT_NO_THROW(Mesh(v, {{0, 1, 2}}, {0}, tags));
  EXPECT_THROW(Mesh(v, {{0, 2, 1}}, {0}, tags), ContractError);
}

TEST(Mesh, RejectsMissingBoundaryTag) {
  std::vector<Vec2> v{{0, 0}, {1, 0}, {0, 1}};
  std::map<EdgeKey, BoundaryTag> tags{{{0, 1}, {BoundaryKind::Dirichlet, 0}},
                                       {{1, 2}, {BoundaryKind::Dirichlet, 0}}};
  EXPECT_THROW(Mesh(v, {{0, 1, 2}}, {0}, tags), ContractError);
}

TEST(Mesh, RejectsTaggedInteriorEdge) {
  const Mesh m = rect_structured(1, 1);
  auto tags = m.boundary_tag_map();
  tags[{0, 3}] = {BoundaryKind::Neumann, 0};
  EXPECT_THROW(Mesh(m.vertices(), m.triangles(), m.regions(), tags), ContractError);
}

TEST(Mesh, HangingNodeDetected) {
  // a triangle next to two halves: vertex 4 sits inside edge (1,2) of the big one
  std::vector<Vec2> v{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0.5, 0.5}};
  std::map<EdgeKey, BoundaryTag> tags;
  for (EdgeKey k : {EdgeKey{0, 1}, EdgeKey{0, 2}, EdgeKey{1, 2}, EdgeKey{1, 3}, EdgeKey{2, 3}})
    tags[k] = {BoundaryKind::Dirichlet, 0};
  tags.erase({1, 2});
  tags[{1, 4}] = {BoundaryKind::Dirichlet, 0};
  tags[{2, 4}] = {BoundaryKind::Dirichlet, 0};
  tags[{1, 2}] = {BoundaryKind::Dirichlet, 0};
  // the two halves and the big triangle do not share edges, so all their outer edges are boundary
  const Mesh m(v, {{0, 1, 2}, {1, 3, 4}, {4, 3, 2}}, {0, 0, 0}, tags);
  EXPECT_FALSE(m.conformity_violation().empty());
}

TEST(Mesh, UniformRefine) {
  const Mesh m = uniform_refine(rect_structured(5, 5));
  EXPECT_EQ(m.num_triangles(), 200u);
  EXPECT_EQ(m.num_vertices(), 121u);
  EXPECT_NEAR(m.total_area(), 1.0, 1e-14);
  EXPECT_TRUE(m.conformity_violation().empty());
  const Mesh l = uniform_refine(lshape_structured(8));
  EXPECT_EQ(l.num_triangles(), 384u);
  EXPECT_EQ(euler_characteristic(l), 1);
}

TEST(Mesh, UniformRefineKeepsTags) {
  const Mesh coarse = rect_structured(2, 2, Diagonal::Main, {}, [](Vec2 mid) {
    return mid.x > 1 - 1e-12 ? BoundaryTag{BoundaryKind::Robin, 3} : BoundaryTag{BoundaryKind::Neumann, 0};
  });
  const Mesh fine = uniform_refine(coarse);
  std::size_t robin = 0;
  for (std::size_t e : fine.boundary_edges()) {
    const BoundaryTag tag = fine.boundary_tag(e);
    if (tag.kind == BoundaryKind::Robin) {
      ++robin;
      EXPECT_EQ(tag.part, 3);
      EXPECT_NEAR(fine.edge_midpoint(e).x, 1.0, 1e-15);
    }
  }
  EXPECT_EQ(robin, 4u);
}

TEST(Mesh, BoundaryKindNames) {
  EXPECT_STREQ(to_string(BoundaryKind::Dirichlet), "dirichlet");
  EXPECT_STREQ(to_string(BoundaryKind::Neumann), "neumann");
  EXPECT_STREQ(to_string(BoundaryKind::Robin), "robin");
}
