#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace eqfem {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

enum class BoundaryKind : std::uint8_t { None, Dirichlet, Neumann, Robin };

const char* to_string(BoundaryKind kind);

struct BoundaryTag {
  BoundaryKind kind = BoundaryKind::None;
  int part = 0;
  friend bool operator==(const BoundaryTag&, const BoundaryTag&) = default;
};

enum class Diagonal { Main, Anti };

using EdgeKey = std::pair<std::size_t, std::size_t>;  ///< (low, high) vertex ids
inline EdgeKey edge_key(std::size_t a, std::size_t b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

using RegionFn = std::function<int(Vec2 centroid)>;
using BoundaryFn = std::function<BoundaryTag(Vec2 midpoint)>;

/// Record of a green-bisected parent, kept so the pair can be dissolved later.
struct GreenParent {
  std::array<std::size_t, 3> vertices{};  ///< counter-clockwise
  int region = 0;
  std::size_t split_edge = 0;  ///< local index of the bisected edge (opposite vertices[split_edge])
  std::size_t midpoint = 0;    ///< vertex id of the bisection point
};

/// Conforming triangulation with region labels and boundary tags. Immutable.
/// Local edge i of a triangle is opposite local vertex i and runs v[i+1] -> v[i+2];
/// its sign is +1 when that matches the global low -> high orientation.
class Mesh {
public:
  Mesh() = default;
  /// Throws ContractError on non-positive areas, non-manifold edges, or missing boundary tags or tagged interior edges.
  Mesh(std::vector<Vec2> vertices, std::vector<std::array<std::size_t, 3>> triangles, std::vector<int> regions,
       const std::map<EdgeKey, BoundaryTag>& boundary_tags, std::vector<std::size_t> green_pair = {},
       std::vector<GreenParent> green_parents = {});

  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_triangles() const noexcept { return triangles_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  const std::vector<Vec2>& vertices() const noexcept { return vertices_; }
  const std::vector<std::array<std::size_t, 3>>& triangles() const noexcept { return triangles_; }
  const std::vector<EdgeKey>& edges() const noexcept { return edges_; }
  const std::vector<int>& regions() const noexcept { return regions_; }

  Vec2 vertex(std::size_t v) const { return vertices_[v]; }
  const std::array<std::size_t, 3>& triangle(std::size_t t) const { return triangles_[t]; }
  int region(std::size_t t) const { return regions_[t]; }
  const std::array<std::size_t, 3>& tri_edges(std::size_t t) const { return tri_edges_[t]; }
  const std::array<int, 3>& tri_edge_signs(std::size_t t) const { return tri_signs_[t]; }
  /// Triangles sharing edge e; the second entry is npos on the boundary.
  const std::array<std::size_t, 2>& edge_triangles(std::size_t e) const { return edge_tris_[e]; }
  bool is_boundary_edge(std::size_t e) const { return edge_tris_[e][1] == npos; }
  BoundaryTag boundary_tag(std::size_t e) const { return tags_[e]; }
  /// Edge index for a vertex pair, npos if absent.
  std::size_t find_edge(std::size_t a, std::size_t b) const;
  std::vector<std::size_t> boundary_edges() const;
  std::map<EdgeKey, BoundaryTag> boundary_tag_map() const;

  // geometry
  double area(std::size_t t) const { return areas_[t]; }
  double edge_length(std::size_t e) const;
  Vec2 edge_midpoint(std::size_t e) const;
  Vec2 centroid(std::size_t t) const;
  /// Outward unit normal of a boundary edge.
  Vec2 outward_normal(std::size_t e) const;
  /// Unit normal of the canonical orientation: (t_y, -t_x) for tangent t = v_hi - v_lo.
  Vec2 edge_normal(std::size_t e) const;
  Vec2 edge_tangent(std::size_t e) const;
  /// Gradients of the three barycentric coordinates (constant per triangle); they sum to zero.
  const std::array<Vec2, 3>& barycentric_gradients(std::size_t t) const { return grads_[t]; }
  Vec2 map_point(std::size_t t, const std::array<double, 3>& bary) const;
  double total_area() const;

  // red-green state
  std::size_t green_pair(std::size_t t) const { return green_pair_.empty() ? npos : green_pair_[t]; }
  const std::vector<std::size_t>& green_pairs() const noexcept { return green_pair_; }
  const std::vector<GreenParent>& green_parents() const noexcept { return green_parents_; }

  /// Hanging-node check: no vertex may lie in the relative interior of an edge. Returns an empty
  /// string when conforming, otherwise a description of the first violation.
  std::string conformity_violation() const;

private:
  std::vector<Vec2> vertices_;
  std::vector<std::array<std::size_t, 3>> triangles_;
  std::vector<int> regions_;
  std::vector<EdgeKey> edges_;
  std::vector<std::array<std::size_t, 3>> tri_edges_;
  std::vector<std::array<int, 3>> tri_signs_;
  std::vector<std::array<std::size_t, 2>> edge_tris_;
  std::vector<BoundaryTag> tags_;
  std::vector<double> areas_;
  std::vector<std::array<Vec2, 3>> grads_;
  std::map<EdgeKey, std::size_t> edge_index_;
  std::vector<std::size_t> green_pair_;
  std::vector<GreenParent> green_parents_;
};

/// Unit square split into nx x ny cells, two triangles each. Main puts the diagonal
/// from (i, j) to (i+1, j+1), Anti from (i+1, j) to (i, j+1).
Mesh rect_structured(std::size_t nx, std::size_t ny, Diagonal diagonal = Diagonal::Main, const RegionFn& region_fn = {},
                     const BoundaryFn& boundary_fn = {});

/// L-shape (0,1)^2 minus [1/2,1] x [0,1/2] on an n x n grid (n even), 3 n^2 / 2 triangles.
/// Default boundary tag is Dirichlet part 0.
Mesh lshape_structured(std::size_t n, Diagonal diagonal = Diagonal::Main, const RegionFn& region_fn = {},
                       const BoundaryFn& boundary_fn = {});

/// Red refinement of every triangle.
Mesh uniform_refine(const Mesh& mesh);

using MarkedSet = std::vector<std::size_t>;

/// Red refinement of the marked triangles with green closure. Marked green children and
/// green pairs touched by the closure are dissolved into their parent, which is red-refined.
Mesh refine_marked(const Mesh& mesh, std::span<const std::size_t> marked);

/// The ceil(fraction * T) largest values; ties go to the lower index. Result is sorted ascending.
MarkedSet mark_fixed_fraction(std::span<const double> values, double fraction);

}  // namespace eqfem
