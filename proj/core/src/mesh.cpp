#include "eqfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eqfem/error.hpp"
#include "eqfem/sparse.hpp"

namespace eqfem {

const char* to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::None: return "none";
    case BoundaryKind::Dirichlet: return "dirichlet";
    case BoundaryKind::Neumann: return "neumann";
    case BoundaryKind::Robin: return "robin";
  }
  return "?";
}

Mesh::Mesh(std::vector<Vec2> vertices, std::vector<std::array<std::size_t, 3>> triangles, std::vector<int> regions,
           const std::map<EdgeKey, BoundaryTag>& boundary_tags, std::vector<std::size_t> green_pair,
           std::vector<GreenParent> green_parents)
    : vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      regions_(std::move(regions)),
      green_pair_(std::move(green_pair)),
      green_parents_(std::move(green_parents)) {
  const std::size_t nt = triangles_.size();
  EQFEM_REQUIRE(regions_.size() == nt, "Mesh: one region label per triangle required");
  EQFEM_REQUIRE(green_pair_.empty() || green_pair_.size() == nt, "Mesh: green state must cover every triangle");
  for (const std::size_t g : green_pair_)
    EQFEM_REQUIRE(g == npos || g < green_parents_.size(), "Mesh: green pair index out of range");
  for (const Vec2& v : vertices_)
    EQFEM_REQUIRE(std::isfinite(v.x) && std::isfinite(v.y), "Mesh: non-finite vertex coordinate");

  tri_edges_.resize(nt);
  tri_signs_.resize(nt);
  areas_.resize(nt);
  grads_.resize(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    const auto& tri = triangles_[t];
    for (const std::size_t v : tri) EQFEM_REQUIRE(v < vertices_.size(), "Mesh: vertex index out of range");
    const Vec2 p0 = vertices_[tri[0]], p1 = vertices_[tri[1]], p2 = vertices_[tri[2]];
    const double twice = cross(p1 - p0, p2 - p0);
    if (!(twice > 0.0)) {
      std::ostringstream msg;
      msg << "Mesh: triangle " << t << " has non-positive area (degenerate or clockwise)";
      throw ContractError(msg.str());
    }
    areas_[t] = 0.5 * twice;
    const std::array<Vec2, 3> p{p0, p1, p2};
    for (std::size_t i = 0; i < 3; ++i) {
      const Vec2 a = p[(i + 1) % 3], b = p[(i + 2) % 3];
      grads_[t][i] = {(a.y - b.y) / twice, (b.x - a.x) / twice};
    }
    for (std::size_t i = 0; i < 3; ++i) {
      const std::size_t a = tri[(i + 1) % 3], b = tri[(i + 2) % 3];
      EQFEM_REQUIRE(a != b, "Mesh: repeated vertex in triangle");
      const EdgeKey key = edge_key(a, b);
      auto [it, inserted] = edge_index_.try_emplace(key, edges_.size());
      if (inserted) {
        edges_.push_back(key);
        edge_tris_.push_back({t, npos});
      } else {
        auto& owners = edge_tris_[it->second];
        if (owners[1] != npos) {
          std::ostringstream msg;
          msg << "Mesh: edge (" << key.first << "," << key.second << ") shared by more than two triangles";
          throw ContractError(msg.str());
        }
        owners[1] = t;
      }
      tri_edges_[t][i] = it->second;
      tri_signs_[t][i] = a < b ? 1 : -1;
    }
  }
  // Interior edges must be traversed in opposite directions by their two triangles.
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& owners = edge_tris_[e];
    if (owners[1] == npos) continue;
    int s0 = 0, s1 = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      if (tri_edges_[owners[0]][i] == e) s0 = tri_signs_[owners[0]][i];
      if (tri_edges_[owners[1]][i] == e) s1 = tri_signs_[owners[1]][i];
    }
    EQFEM_REQUIRE(s0 == -s1, "Mesh: inconsistent orientation across an interior edge");
  }

  tags_.assign(edges_.size(), BoundaryTag{});
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto it = boundary_tags.find(edges_[e]);
    if (is_boundary_edge(e)) {
      if (it == boundary_tags.end() || it->second.kind == BoundaryKind::None) {
        std::ostringstream msg;
        msg << "Mesh: boundary edge (" << edges_[e].first << "," << edges_[e].second << ") has no boundary tag";
        throw ContractError(msg.str());
      }
      tags_[e] = it->second;
    } else if (it != boundary_tags.end() && it->second.kind != BoundaryKind::None) {
      std::ostringstream msg;
      msg << "Mesh: interior edge (" << edges_[e].first << "," << edges_[e].second << ") carries a boundary tag";
      throw ContractError(msg.str());
    }
  }
}

std::size_t Mesh::find_edge(std::size_t a, std::size_t b) const {
  const auto it = edge_index_.find(edge_key(a, b));
  return it == edge_index_.end() ? npos : it->second;
}

std::vector<std::size_t> Mesh::boundary_edges() const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (is_boundary_edge(e)) out.push_back(e);
  return out;
}

std::map<EdgeKey, BoundaryTag> Mesh::boundary_tag_map() const {
  std::map<EdgeKey, BoundaryTag> out;
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (is_boundary_edge(e)) out.emplace(edges_[e], tags_[e]);
  return out;
}

double Mesh::edge_length(std::size_t e) const {
  const Vec2 d = vertices_[edges_[e].second] - vertices_[edges_[e].first];
  return std::hypot(d.x, d.y);
}

Vec2 Mesh::edge_midpoint(std::size_t e) const {
  return 0.5 * (vertices_[edges_[e].first] + vertices_[edges_[e].second]);
}

Vec2 Mesh::centroid(std::size_t t) const {
  const auto& tri = triangles_[t];
  return (1.0 / 3.0) * (vertices_[tri[0]] + vertices_[tri[1]] + vertices_[tri[2]]);
}

Vec2 Mesh::edge_tangent(std::size_t e) const {
  const Vec2 d = vertices_[edges_[e].second] - vertices_[edges_[e].first];
  const double len = std::hypot(d.x, d.y);
  return {d.x / len, d.y / len};
}

Vec2 Mesh::edge_normal(std::size_t e) const {
  const Vec2 t = edge_tangent(e);
  return {t.y, -t.x};
}

Vec2 Mesh::outward_normal(std::size_t e) const {
  EQFEM_REQUIRE(is_boundary_edge(e), "Mesh::outward_normal: edge is not on the boundary");
  const Vec2 n = edge_normal(e);
  const Vec2 away = edge_midpoint(e) - centroid(edge_tris_[e][0]);
  return dot(n, away) > 0.0 ? n : Vec2{-n.x, -n.y};
}

Vec2 Mesh::map_point(std::size_t t, const std::array<double, 3>& bary) const {
  const auto& tri = triangles_[t];
  return bary[0] * vertices_[tri[0]] + bary[1] * vertices_[tri[1]] + bary[2] * vertices_[tri[2]];
}

double Mesh::total_area() const {
  return pairwise_sum(areas_);
}

std::string Mesh::conformity_violation() const {
  if (vertices_.empty()) return {};
  double xmin = vertices_[0].x, xmax = xmin, ymin = vertices_[0].y, ymax = ymin;
  for (const Vec2& v : vertices_) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  const std::size_t cells = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(vertices_.size())));
  const double wx = std::max(xmax - xmin, 1e-300) / static_cast<double>(cells);
  const double wy = std::max(ymax - ymin, 1e-300) / static_cast<double>(cells);
  auto cell_of = [&](double v, double lo, double w) {
    const auto c = static_cast<long>(std::floor((v - lo) / w));
    return static_cast<std::size_t>(std::clamp<long>(c, 0, static_cast<long>(cells) - 1));
  };
  std::vector<std::vector<std::size_t>> grid(cells * cells);
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    grid[cell_of(vertices_[v].y, ymin, wy) * cells + cell_of(vertices_[v].x, xmin, wx)].push_back(v);

  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Vec2 a = vertices_[edges_[e].first], b = vertices_[edges_[e].second];
    const Vec2 d = b - a;
    const double len2 = dot(d, d);
    const std::size_t cx0 = cell_of(std::min(a.x, b.x), xmin, wx), cx1 = cell_of(std::max(a.x, b.x), xmin, wx);
    const std::size_t cy0 = cell_of(std::min(a.y, b.y), ymin, wy), cy1 = cell_of(std::max(a.y, b.y), ymin, wy);
    for (std::size_t cy = cy0; cy <= cy1; ++cy)
      for (std::size_t cx = cx0; cx <= cx1; ++cx)
        for (const std::size_t v : grid[cy * cells + cx]) {
          if (v == edges_[e].first || v == edges_[e].second) continue;
          const Vec2 q = vertices_[v] - a;
          const double s = dot(q, d) / len2;
          if (s <= 1e-12 || s >= 1.0 - 1e-12) continue;
          if (std::abs(cross(d, q)) <= 1e-12 * len2) {
            std::ostringstream msg;
            msg << "hanging node " << v << " on edge (" << edges_[e].first << "," << edges_[e].second << ")";
            return msg.str();
          }
        }
  }
  return {};
}

namespace {

BoundaryTag default_square_tag(Vec2 m) {
  // part: 0 bottom, 1 right, 2 top, 3 left
  const double tol = 1e-12;
  int part = 0;
  if (std::abs(m.y) < tol) part = 0;
  else if (std::abs(m.x - 1.0) < tol) part = 1;
  else if (std::abs(m.y - 1.0) < tol) part = 2;
  else part = 3;
  return {BoundaryKind::Dirichlet, part};
}

Mesh grid_mesh(std::size_t nx, std::size_t ny, Diagonal diagonal, const RegionFn& region_fn,
               const BoundaryFn& boundary_fn, const std::function<bool(std::size_t, std::size_t)>& keep_cell) {
  const std::size_t stride = nx + 1;
  std::vector<std::size_t> remap((nx + 1) * (ny + 1), npos);
  std::vector<std::array<std::size_t, 3>> tris;
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      if (!keep_cell(i, j)) continue;
      const std::size_t v00 = j * stride + i, v10 = v00 + 1, v01 = v00 + stride, v11 = v01 + 1;
      if (diagonal == Diagonal::Main) {
        tris.push_back({v00, v10, v11});
        tris.push_back({v00, v11, v01});
      } else {
        tris.push_back({v00, v10, v01});
        tris.push_back({v10, v11, v01});
      }
    }
  std::vector<Vec2> verts;
  // Vertices are numbered in grid order, skipping those not used by any kept cell.
  std::vector<char> used(remap.size(), 0);
  for (const auto& tri : tris)
    for (const std::size_t v : tri) used[v] = 1;
  for (std::size_t g = 0; g < remap.size(); ++g) {
    if (!used[g]) continue;
    remap[g] = verts.size();
    verts.push_back({static_cast<double>(g % stride) / static_cast<double>(nx),
                     static_cast<double>(g / stride) / static_cast<double>(ny)});
  }
  for (auto& tri : tris)
    for (std::size_t& v : tri) v = remap[v];

  std::vector<int> regions(tris.size(), 0);
  std::map<EdgeKey, std::size_t> count;
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const auto& tri = tris[t];
    if (region_fn) {
      const Vec2 c = (1.0 / 3.0) * (verts[tri[0]] + verts[tri[1]] + verts[tri[2]]);
      regions[t] = region_fn(c);
    }
    for (std::size_t i = 0; i < 3; ++i) ++count[edge_key(tri[i], tri[(i + 1) % 3])];
  }
  std::map<EdgeKey, BoundaryTag> tags;
  for (const auto& [key, c] : count) {
    if (c != 1) continue;
    const Vec2 m = 0.5 * (verts[key.first] + verts[key.second]);
    tags.emplace(key, boundary_fn ? boundary_fn(m) : default_square_tag(m));
  }
  return Mesh(std::move(verts), std::move(tris), std::move(regions), tags);
}

}  // namespace

Mesh rect_structured(std::size_t nx, std::size_t ny, Diagonal diagonal, const RegionFn& region_fn,
                     const BoundaryFn& boundary_fn) {
  EQFEM_REQUIRE(nx >= 1 && ny >= 1, "rect_structured: nx and ny must be at least 1");
  return grid_mesh(nx, ny, diagonal, region_fn, boundary_fn, [](std::size_t, std::size_t) { return true; });
}

Mesh lshape_structured(std::size_t n, Diagonal diagonal, const RegionFn& region_fn, const BoundaryFn& boundary_fn) {
  EQFEM_REQUIRE(n >= 2 && n % 2 == 0, "lshape_structured: n must be even and at least 2");
  const std::size_t half = n / 2;
  const BoundaryFn tag = boundary_fn ? boundary_fn : [](Vec2) { return BoundaryTag{BoundaryKind::Dirichlet, 0}; };
  return grid_mesh(n, n, diagonal, region_fn, tag,
                   [half](std::size_t i, std::size_t j) { return !(i >= half && j < half); });
}

MarkedSet mark_fixed_fraction(std::span<const double> values, double fraction) {
  EQFEM_REQUIRE(fraction > 0.0 && fraction <= 1.0, "mark_fixed_fraction: fraction must lie in (0, 1]");
  for (const double v : values)
    EQFEM_REQUIRE(std::isfinite(v) && v >= 0.0, "mark_fixed_fraction: values must be finite and nonnegative");
  const std::size_t t = values.size();
  const auto k = std::min<std::size_t>(
      t, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(t) - 1e-9)));
  std::vector<std::size_t> order(t);
  for (std::size_t i = 0; i < t; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  MarkedSet marked(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(marked.begin(), marked.end());
  return marked;
}

}  // namespace eqfem
