#include <algorithm>
#include <deque>

#include "eqfem/error.hpp"
#include "eqfem/mesh.hpp"

namespace eqfem {

namespace {

class MeshBuilder {
public:
  explicit MeshBuilder(const Mesh& old) : vertices_(old.vertices()), tags_(old.boundary_tag_map()) {}

  void preset_midpoint(std::size_t a, std::size_t b, std::size_t m) { midpoints_.emplace(edge_key(a, b), m); }

  std::size_t midpoint(std::size_t a, std::size_t b) {
    const EdgeKey key = edge_key(a, b);
    const auto it = midpoints_.find(key);
    if (it != midpoints_.end()) return it->second;
    const std::size_t m = vertices_.size();
    vertices_.push_back(0.5 * (vertices_[a] + vertices_[b]));
    midpoints_.emplace(key, m);
    const auto tag = tags_.find(key);
    if (tag != tags_.end()) {
      const BoundaryTag t = tag->second;
      tags_.emplace(edge_key(a, m), t);
      tags_.emplace(edge_key(m, b), t);
    }
    return m;
  }

  std::size_t size() const noexcept { return triangles_.size(); }

  void add(const std::array<std::size_t, 3>& tri, int region, std::size_t green = npos) {
    triangles_.push_back(tri);
    regions_.push_back(region);
    green_.push_back(green);
  }

  void red(const std::array<std::size_t, 3>& v, int region) {
    const std::size_t m01 = midpoint(v[0], v[1]);
    const std::size_t m12 = midpoint(v[1], v[2]);
    const std::size_t m20 = midpoint(v[2], v[0]);
    add({v[0], m01, m20}, region);
    add({m01, v[1], m12}, region);
    add({m20, m12, v[2]}, region);
    add({m01, m12, m20}, region);
  }

  void green(const std::array<std::size_t, 3>& v, int region, std::size_t k) {
    const std::size_t a = v[(k + 1) % 3], b = v[(k + 2) % 3];
    const std::size_t m = midpoint(a, b);
    const std::size_t id = parents_.size();
    parents_.push_back({v, region, k, m});
    add({v[k], a, m}, region, id);
    add({v[k], m, b}, region, id);
  }

  std::size_t keep_green(const GreenParent& parent, std::size_t old_id) {
    const auto [it, inserted] = remap_.try_emplace(old_id, parents_.size());
    if (inserted) parents_.push_back(parent);
    return it->second;
  }

  Mesh build() {
    bool any_green = false;
    for (const std::size_t g : green_) any_green = any_green || g != npos;
    if (!any_green) green_.clear();
    return Mesh(std::move(vertices_), std::move(triangles_), std::move(regions_), tags_, std::move(green_),
                std::move(parents_));
  }

private:
  std::vector<Vec2> vertices_;
  std::map<EdgeKey, BoundaryTag> tags_;
  std::map<EdgeKey, std::size_t> midpoints_;
  std::vector<std::array<std::size_t, 3>> triangles_;
  std::vector<int> regions_;
  std::vector<std::size_t> green_;
  std::vector<GreenParent> parents_;
  std::map<std::size_t, std::size_t> remap_;
};

}  // namespace

Mesh uniform_refine(const Mesh& mesh) {
  MeshBuilder b(mesh);
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) b.red(mesh.triangle(t), mesh.region(t));
  return b.build();
}

namespace {

// What happened to an old triangle: kept (index in the new mesh), green-bisected (index of its
// first child) or red-refined / dissolved.
struct Fate {
  enum Kind { Kept, Green, Refined } kind = Kept;
  std::size_t index = npos;
};

struct Plan {
  std::vector<std::array<std::size_t, 2>> children;
  std::vector<char> edge_split, red, gone, dissolved;
};

Plan make_plan(const Mesh& mesh, std::span<const std::size_t> marked) {
  const std::size_t nt = mesh.num_triangles();
  const auto& parents = mesh.green_parents();
  Plan p;
  p.children.assign(parents.size(), {npos, npos});
  for (std::size_t t = 0; t < nt; ++t) {
    const std::size_t g = mesh.green_pair(t);
    if (g == npos) continue;
    (p.children[g][0] == npos ? p.children[g][0] : p.children[g][1]) = t;
  }
  p.edge_split.assign(mesh.num_edges(), 0);
  p.red.assign(nt, 0);
  p.gone.assign(nt, 0);
  p.dissolved.assign(parents.size(), 0);
  std::deque<std::size_t> queue;

  auto split = [&](std::size_t e) {
    if (p.edge_split[e]) return;
    p.edge_split[e] = 1;
    queue.push_back(e);
  };
  auto dissolve = [&](std::size_t g) {
    if (p.dissolved[g]) return;
    p.dissolved[g] = 1;
    for (const std::size_t c : p.children[g]) p.gone[c] = 1;
    const GreenParent& gp = parents[g];
    for (std::size_t i = 0; i < 3; ++i) {
      if (i == gp.split_edge) continue;
      const std::size_t e = mesh.find_edge(gp.vertices[(i + 1) % 3], gp.vertices[(i + 2) % 3]);
      EQFEM_REQUIRE(e != npos, "refine_marked: corrupt green parent record");
      split(e);
    }
  };
  auto make_red = [&](std::size_t t) {
    if (p.red[t] || p.gone[t]) return;
    const std::size_t g = mesh.green_pair(t);
    if (g != npos) {
      dissolve(g);
      return;
    }
    p.red[t] = 1;
    for (const std::size_t e : mesh.tri_edges(t)) split(e);
  };

  for (const std::size_t t : marked) make_red(t);
  while (!queue.empty()) {
    const std::size_t e = queue.front();
    queue.pop_front();
    for (const std::size_t t : mesh.edge_triangles(e)) {
      if (t == npos || p.red[t] || p.gone[t]) continue;
      int c = 0;
      for (const std::size_t te : mesh.tri_edges(t)) c += p.edge_split[te];
      if (mesh.green_pair(t) != npos ? c >= 1 : c >= 2) make_red(t);
    }
  }
  return p;
}

// Dissolved green pairs whose bisected edge is split again on the other side.
std::vector<std::size_t> two_level_pairs(const Mesh& mesh, const Plan& p) {
  std::vector<std::size_t> out;
  const auto& parents = mesh.green_parents();
  for (std::size_t g = 0; g < parents.size(); ++g) {
    if (!p.dissolved[g]) continue;
    const GreenParent& gp = parents[g];
    for (const std::size_t end : {gp.vertices[(gp.split_edge + 1) % 3], gp.vertices[(gp.split_edge + 2) % 3]}) {
      const std::size_t e = mesh.find_edge(end, gp.midpoint);
      if (e != npos && p.edge_split[e]) {
        out.push_back(g);
        break;
      }
    }
  }
  return out;
}

Mesh build(const Mesh& mesh, const Plan& p, std::vector<Fate>* fates) {
  const std::size_t nt = mesh.num_triangles();
  const auto& parents = mesh.green_parents();
  if (fates) fates->assign(nt, Fate{});
  MeshBuilder b(mesh);
  for (std::size_t g = 0; g < parents.size(); ++g) {
    if (!p.dissolved[g]) continue;
    const GreenParent& gp = parents[g];
    b.preset_midpoint(gp.vertices[(gp.split_edge + 1) % 3], gp.vertices[(gp.split_edge + 2) % 3], gp.midpoint);
  }
  for (std::size_t t = 0; t < nt; ++t) {
    const std::size_t g = mesh.green_pair(t);
    int c = 0;
    for (const std::size_t e : mesh.tri_edges(t)) c += p.edge_split[e];
    Fate fate{Fate::Kept, b.size()};
    if (p.gone[t]) {
      fate.kind = Fate::Refined;
      if (t == std::min(p.children[g][0], p.children[g][1])) b.red(parents[g].vertices, parents[g].region);
    } else if (p.red[t]) {
      fate.kind = Fate::Refined;
      b.red(mesh.triangle(t), mesh.region(t));
    } else if (c == 1) {
      fate.kind = Fate::Green;
      std::size_t k = 0;
      while (!p.edge_split[mesh.tri_edges(t)[k]]) ++k;
      b.green(mesh.triangle(t), mesh.region(t), k);
    } else if (g != npos) {
      b.add(mesh.triangle(t), mesh.region(t), b.keep_green(parents[g], g));
    } else {
      b.add(mesh.triangle(t), mesh.region(t));
    }
    if (fates) (*fates)[t] = fate;
  }
  return b.build();
}

Mesh refine_impl(const Mesh& mesh, std::span<const std::size_t> marked, std::vector<Fate>* fates, int depth) {
  EQFEM_REQUIRE(depth < 64, "refine_marked: closure did not terminate");
  const Plan plan = make_plan(mesh, marked);
  const std::vector<std::size_t> deferred = two_level_pairs(mesh, plan);
  if (deferred.empty()) return build(mesh, plan, fates);

  // Restore and red-refine the affected parents first, then refine the marked set on the result.
  MarkedSet first;
  for (const std::size_t g : deferred) first.push_back(plan.children[g][0]);
  std::vector<Fate> f1, f2;
  const Mesh mid = refine_impl(mesh, first, &f1, depth + 1);
  MarkedSet again;
  for (const std::size_t t : marked)
    if (f1[t].kind != Fate::Refined) again.push_back(f1[t].index);
  std::sort(again.begin(), again.end());
  again.erase(std::unique(again.begin(), again.end()), again.end());
  Mesh out = refine_impl(mid, again, fates ? &f2 : nullptr, depth + 1);
  if (fates) {
    fates->assign(mesh.num_triangles(), Fate{Fate::Refined, npos});
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
      if (f1[t].kind == Fate::Refined) continue;
      const Fate& next = f2[f1[t].index];
      if (f1[t].kind == Fate::Kept) (*fates)[t] = next;
      else if (next.kind != Fate::Refined) (*fates)[t] = Fate{Fate::Green, next.index};
    }
  }
  return out;
}

}  // namespace

Mesh refine_marked(const Mesh& mesh, std::span<const std::size_t> marked) {
  for (const std::size_t t : marked) EQFEM_REQUIRE(t < mesh.num_triangles(), "refine_marked: marked index out of range");
  if (marked.empty()) return mesh;
  return refine_impl(mesh, marked, nullptr, 0);
}

}  // namespace eqfem
