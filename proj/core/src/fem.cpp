#include "eqfem/fem.hpp"

#include <cmath>
#include <sstream>

#include "eqfem/error.hpp"
#include "eqfem/parallel.hpp"
#include "eqfem/quadrature.hpp"

namespace eqfem {

Mat2 Mat2::inverse() const {
  const double d = det();
  EQFEM_REQUIRE(d != 0.0 && std::isfinite(d), "Mat2::inverse: singular matrix");
  return {yy / d, -xy / d, -yx / d, xx / d};
}

bool Mat2::is_spd() const {
  const double scale = std::max({std::abs(xx), std::abs(xy), std::abs(yx), std::abs(yy)});
  if (!(scale > 0.0) || !std::isfinite(scale)) return false;
  if (std::abs(xy - yx) > 1e-12 * scale) return false;
  return xx > 0.0 && det() > 0.0;
}

PiecewiseTensor::PiecewiseTensor(Mat2 value) : PiecewiseTensor(std::map<int, Mat2>{{0, value}}) { uniform_ = true; }

PiecewiseTensor::PiecewiseTensor(std::map<int, Mat2> values) : values_(std::move(values)) {
  EQFEM_REQUIRE(!values_.empty(), "PiecewiseTensor: at least one region value required");
  for (const auto& [region, m] : values_) {
    if (!m.is_spd()) {
      std::ostringstream msg;
      msg << "PiecewiseTensor: value for region " << region << " is not symmetric positive definite";
      throw ContractError(msg.str());
    }
    inverses_[region] = m.inverse();
  }
}

const Mat2& PiecewiseTensor::at(int region) const {
  if (uniform_) return values_.begin()->second;
  const auto it = values_.find(region);
  if (it == values_.end()) throw ContractError("PiecewiseTensor: no value for region " + std::to_string(region));
  return it->second;
}

const Mat2& PiecewiseTensor::inverse_at(int region) const {
  if (uniform_) return inverses_.begin()->second;
  const auto it = inverses_.find(region);
  if (it == inverses_.end()) throw ContractError("PiecewiseTensor: no value for region " + std::to_string(region));
  return it->second;
}

PiecewiseScalar::PiecewiseScalar(double value) : PiecewiseScalar(std::map<int, double>{{0, value}}) {
  uniform_ = true;
}

PiecewiseScalar::PiecewiseScalar(std::map<int, double> values) : values_(std::move(values)) {
  EQFEM_REQUIRE(!values_.empty(), "PiecewiseScalar: at least one region value required");
  for (const auto& [region, v] : values_)
    if (!(v > 0.0) || !std::isfinite(v))
      throw ContractError("PiecewiseScalar: value for region " + std::to_string(region) + " must be positive");
}

double PiecewiseScalar::at(int region) const {
  if (uniform_) return values_.begin()->second;
  const auto it = values_.find(region);
  if (it == values_.end()) throw ContractError("PiecewiseScalar: no value for region " + std::to_string(region));
  return it->second;
}

FeSpace::FeSpace(std::shared_ptr<const Mesh> mesh, SpaceKind kind, std::vector<BoundaryKind> essential)
    : mesh_(std::move(mesh)), kind_(kind) {
  EQFEM_REQUIRE(mesh_ != nullptr, "FeSpace: null mesh");
  const Mesh& m = *mesh_;
  essential_.assign(kind_ == SpaceKind::NodalP1 ? m.num_vertices() : m.num_edges(), 0);
  for (const std::size_t e : m.boundary_edges()) {
    const BoundaryKind k = m.boundary_tag(e).kind;
    bool hit = false;
    for (const BoundaryKind ek : essential) hit = hit || ek == k;
    if (!hit) continue;
    if (kind_ == SpaceKind::NodalP1) {
      essential_[m.edges()[e].first] = 1;
      essential_[m.edges()[e].second] = 1;
    } else {
      essential_[e] = 1;
    }
  }
}

std::size_t FeSpace::essential_count() const {
  std::size_t c = 0;
  for (const char e : essential_) c += e != 0;
  return c;
}

std::array<std::size_t, 3> FeSpace::element_dofs(std::size_t t) const {
  return kind_ == SpaceKind::NodalP1 ? mesh_->triangle(t) : mesh_->tri_edges(t);
}

FeFunction::FeFunction(std::shared_ptr<const FeSpace> s, Vector c) : space(std::move(s)), coeffs(std::move(c)) {
  EQFEM_REQUIRE(space != nullptr, "FeFunction: null space");
  EQFEM_REQUIRE(coeffs.size() == space->dof_count(), "FeFunction: coefficient count must equal dof count");
}

FeFunction FeFunction::zero(std::shared_ptr<const FeSpace> s) {
  const std::size_t n = s->dof_count();
  return FeFunction(std::move(s), Vector(n, 0.0));
}

std::array<Vec2, 3> rt0_basis(const Mesh& mesh, std::size_t t, const std::array<double, 3>& bary) {
  const auto& tri = mesh.triangle(t);
  const Vec2 x = mesh.map_point(t, bary);
  const double inv = 1.0 / (2.0 * mesh.area(t));
  const auto& s = mesh.tri_edge_signs(t);
  std::array<Vec2, 3> out;
  for (std::size_t i = 0; i < 3; ++i) out[i] = (s[i] * inv) * (x - mesh.vertex(tri[i]));
  return out;
}

std::array<Vec2, 3> n0_basis(const Mesh& mesh, std::size_t t, const std::array<double, 3>& bary) {
  const auto& g = mesh.barycentric_gradients(t);
  const auto& s = mesh.tri_edge_signs(t);
  std::array<Vec2, 3> out;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t a = (i + 1) % 3, b = (i + 2) % 3;
    out[i] = static_cast<double>(s[i]) * (bary[a] * g[b] - bary[b] * g[a]);
  }
  return out;
}

std::array<double, 3> rt0_div(const Mesh& mesh, std::size_t t) {
  const double inv = 1.0 / mesh.area(t);
  const auto& s = mesh.tri_edge_signs(t);
  return {s[0] * inv, s[1] * inv, s[2] * inv};
}

std::array<double, 3> n0_rot(const Mesh& mesh, std::size_t t) { return rt0_div(mesh, t); }

double eval_p1(const FeFunction& u, std::size_t t, const std::array<double, 3>& bary) {
  const auto& tri = u.mesh().triangle(t);
  return bary[0] * u.coeffs[tri[0]] + bary[1] * u.coeffs[tri[1]] + bary[2] * u.coeffs[tri[2]];
}

Vec2 grad_p1(const FeFunction& u, std::size_t t) {
  const auto& tri = u.mesh().triangle(t);
  const auto& g = u.mesh().barycentric_gradients(t);
  return u.coeffs[tri[0]] * g[0] + u.coeffs[tri[1]] * g[1] + u.coeffs[tri[2]] * g[2];
}

Vec2 cograd_p1(const FeFunction& u, std::size_t t) { return perp_grad(grad_p1(u, t)); }

Vec2 eval_edge(const FeFunction& v, std::size_t t, const std::array<double, 3>& bary) {
  const Mesh& m = v.mesh();
  const auto basis = v.space->kind() == SpaceKind::EdgeRT0 ? rt0_basis(m, t, bary) : n0_basis(m, t, bary);
  const auto& e = m.tri_edges(t);
  return v.coeffs[e[0]] * basis[0] + v.coeffs[e[1]] * basis[1] + v.coeffs[e[2]] * basis[2];
}

double div_rt0(const FeFunction& p, std::size_t t) {
  const auto d = rt0_div(p.mesh(), t);
  const auto& e = p.mesh().tri_edges(t);
  return p.coeffs[e[0]] * d[0] + p.coeffs[e[1]] * d[1] + p.coeffs[e[2]] * d[2];
}

double rot_n0(const FeFunction& e, std::size_t t) { return div_rt0(e, t); }

Vec2 eval_vp1(const VectorP1Function& p, std::size_t t, const std::array<double, 3>& bary) {
  const auto& tri = p.mesh->triangle(t);
  return bary[0] * p.nodal[tri[0]] + bary[1] * p.nodal[tri[1]] + bary[2] * p.nodal[tri[2]];
}

double div_vp1(const VectorP1Function& p, std::size_t t) {
  const auto& tri = p.mesh->triangle(t);
  const auto& g = p.mesh->barycentric_gradients(t);
  return dot(p.nodal[tri[0]], g[0]) + dot(p.nodal[tri[1]], g[1]) + dot(p.nodal[tri[2]], g[2]);
}

namespace {

using Local = std::array<std::array<double, 3>, 3>;

SpaceKind space_for(BilinearForm form) {
  switch (form) {
    case BilinearForm::P1Stiffness:
    case BilinearForm::P1Mass:
    case BilinearForm::P1CoGradStiffness: return SpaceKind::NodalP1;
    case BilinearForm::RT0Mass:
    case BilinearForm::RT0DivDiv: return SpaceKind::EdgeRT0;
    case BilinearForm::N0Mass:
    case BilinearForm::N0CurlCurl: return SpaceKind::EdgeN0;
  }
  return SpaceKind::NodalP1;
}

bool wants_tensor(BilinearForm form) {
  return form == BilinearForm::P1Stiffness || form == BilinearForm::P1CoGradStiffness ||
         form == BilinearForm::RT0Mass || form == BilinearForm::N0Mass;
}

Local element_matrix(const Mesh& mesh, std::size_t t, BilinearForm form, const Coefficient& coef,
                     const QuadratureRule& rule) {
  Local k{};
  const int region = mesh.region(t);
  const double area = mesh.area(t);
  const auto& g = mesh.barycentric_gradients(t);
  switch (form) {
    case BilinearForm::P1Stiffness:
    case BilinearForm::P1CoGradStiffness: {
      const auto& tensor = std::get<PiecewiseTensor>(coef);
      const Mat2 c = form == BilinearForm::P1Stiffness ? tensor.at(region) : tensor.inverse_at(region);
      std::array<Vec2, 3> d = g;
      if (form == BilinearForm::P1CoGradStiffness)
        for (auto& v : d) v = perp_grad(v);
      double wsum = 0.0;
      for (const auto& q : rule.points) wsum += 2.0 * area * q.weight;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) k[i][j] = wsum * dot(d[i], c.apply(d[j]));
      break;
    }
    case BilinearForm::P1Mass: {
      const double rho = std::get<PiecewiseScalar>(coef).at(region);
      for (const auto& q : rule.points) {
        const double w = 2.0 * area * q.weight * rho;
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = 0; j < 3; ++j) k[i][j] += w * q.bary[i] * q.bary[j];
      }
      break;
    }
    case BilinearForm::RT0Mass:
    case BilinearForm::N0Mass: {
      const auto& tensor = std::get<PiecewiseTensor>(coef);
      const Mat2 c = form == BilinearForm::RT0Mass ? tensor.inverse_at(region) : tensor.at(region);
      for (const auto& q : rule.points) {
        const auto phi = form == BilinearForm::RT0Mass ? rt0_basis(mesh, t, q.bary) : n0_basis(mesh, t, q.bary);
        const double w = 2.0 * area * q.weight;
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = 0; j < 3; ++j) k[i][j] += w * dot(phi[i], c.apply(phi[j]));
      }
      break;
    }
    case BilinearForm::RT0DivDiv:
    case BilinearForm::N0CurlCurl: {
      const double inv = 1.0 / std::get<PiecewiseScalar>(coef).at(region);
      const auto d = rt0_div(mesh, t);
      double wsum = 0.0;
      for (const auto& q : rule.points) wsum += 2.0 * area * q.weight;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) k[i][j] = wsum * inv * d[i] * d[j];
      break;
    }
  }
  return k;
}

std::string where(std::size_t t, Vec2 x) {
  std::ostringstream msg;
  msg << "triangle " << t << " at (" << x.x << ", " << x.y << ")";
  return msg.str();
}

double checked(double v, std::size_t t, Vec2 x) {
  if (!std::isfinite(v)) throw Error("non-finite source value in " + where(t, x));
  return v;
}

Vec2 checked(Vec2 v, std::size_t t, Vec2 x) {
  if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw Error("non-finite source value in " + where(t, x));
  return v;
}

Vector scatter_loads(const FeSpace& space, const std::vector<std::array<double, 3>>& local) {
  Vector b(space.dof_count(), 0.0);
  for (std::size_t t = 0; t < local.size(); ++t) {
    const auto dofs = space.element_dofs(t);
    for (std::size_t i = 0; i < 3; ++i) b[dofs[i]] += local[t][i];
  }
  return b;
}

template <class F>
Vector element_loads(const FeSpace& space, const F& local_fn) {
  const Mesh& mesh = space.mesh();
  std::vector<std::array<double, 3>> local(mesh.num_triangles());
  parallel_for(mesh.num_triangles(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) local[t] = local_fn(t);
  });
  return scatter_loads(space, local);
}

bool agree(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); }

[[noreturn]] void two_sided_failure(const char* what, std::size_t index, double a, double b) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "interpolate: field is not single-valued at " << what << " " << index << " (" << a << " vs " << b << ")";
  throw ContractError(msg.str());
}

}  // namespace

SparseMatrix assemble(const FeSpace& space, BilinearForm form, const Coefficient& coefficient, int degree) {
  EQFEM_REQUIRE(space.kind() == space_for(form), "assemble: form does not match the space kind");
  EQFEM_REQUIRE(wants_tensor(form) == std::holds_alternative<PiecewiseTensor>(coefficient),
                "assemble: coefficient type does not match the form");
  const QuadratureRule& rule = triangle_rule(degree);
  const Mesh& mesh = space.mesh();
  const std::size_t nt = mesh.num_triangles();
  std::vector<Local> local(nt);
  parallel_for(nt, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) local[t] = element_matrix(mesh, t, form, coefficient, rule);
  });
  TripletBuilder builder(space.dof_count(), space.dof_count());
  builder.reserve(9 * nt);
  for (std::size_t t = 0; t < nt; ++t) {
    const auto dofs = space.element_dofs(t);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) builder.add(dofs[i], dofs[j], local[t][i][j]);
  }
  return builder.build();
}

Vector load_p1(const FeSpace& space, const ScalarFn& f, int degree) {
  EQFEM_REQUIRE(space.kind() == SpaceKind::NodalP1, "load_p1: P1 space required");
  const QuadratureRule& rule = triangle_rule(degree);
  const Mesh& mesh = space.mesh();
  return element_loads(space, [&](std::size_t t) {
    std::array<double, 3> b{};
    for (const auto& q : rule.points) {
      const Vec2 x = mesh.map_point(t, q.bary);
      const double w = 2.0 * mesh.area(t) * q.weight * checked(f(x, mesh.region(t)), t, x);
      for (std::size_t i = 0; i < 3; ++i) b[i] += w * q.bary[i];
    }
    return b;
  });
}

Vector load_rt0_div(const FeSpace& space, const ScalarFn& f, const PiecewiseScalar& rho, int degree) {
  EQFEM_REQUIRE(space.kind() == SpaceKind::EdgeRT0, "load_rt0_div: RT0 space required");
  const QuadratureRule& rule = triangle_rule(degree);
  const Mesh& mesh = space.mesh();
  return element_loads(space, [&](std::size_t t) {
    const auto d = rt0_div(mesh, t);
    double integral = 0.0;
    for (const auto& q : rule.points) {
      const Vec2 x = mesh.map_point(t, q.bary);
      integral += 2.0 * mesh.area(t) * q.weight * checked(f(x, mesh.region(t)), t, x);
    }
    const double c = -integral / rho.at(mesh.region(t));
    return std::array<double, 3>{c * d[0], c * d[1], c * d[2]};
  });
}

Vector load_n0(const FeSpace& space, const VectorFn& j, int degree) {
  EQFEM_REQUIRE(space.kind() == SpaceKind::EdgeN0, "load_n0: N0 space required");
  const QuadratureRule& rule = triangle_rule(degree);
  const Mesh& mesh = space.mesh();
  return element_loads(space, [&](std::size_t t) {
    std::array<double, 3> b{};
    for (const auto& q : rule.points) {
      const Vec2 x = mesh.map_point(t, q.bary);
      const Vec2 jv = checked(j(x, mesh.region(t)), t, x);
      const auto phi = n0_basis(mesh, t, q.bary);
      const double w = 2.0 * mesh.area(t) * q.weight;
      for (std::size_t i = 0; i < 3; ++i) b[i] += w * dot(jv, phi[i]);
    }
    return b;
  });
}

Vector load_p1_cograd(const FeSpace& space, const VectorFn& j, const PiecewiseTensor& eps, int degree) {
  EQFEM_REQUIRE(space.kind() == SpaceKind::NodalP1, "load_p1_cograd: P1 space required");
  const QuadratureRule& rule = triangle_rule(degree);
  const Mesh& mesh = space.mesh();
  return element_loads(space, [&](std::size_t t) {
    Vec2 integral{};
    for (const auto& q : rule.points) {
      const Vec2 x = mesh.map_point(t, q.bary);
      integral = integral + (2.0 * mesh.area(t) * q.weight) * checked(j(x, mesh.region(t)), t, x);
    }
    const Vec2 c = eps.inverse_at(mesh.region(t)).apply(integral);
    const auto& g = mesh.barycentric_gradients(t);
    return std::array<double, 3>{dot(c, perp_grad(g[0])), dot(c, perp_grad(g[1])), dot(c, perp_grad(g[2]))};
  });
}

ReducedSystem apply_essential(const FeSpace& space, const SparseMatrix& a, std::span<const double> b,
                              std::span<const double> essential_values) {
  const std::size_t n = space.dof_count();
  EQFEM_REQUIRE(a.rows() == n && a.cols() == n && b.size() == n, "apply_essential: dimension mismatch");
  EQFEM_REQUIRE(essential_values.empty() || essential_values.size() == n,
                "apply_essential: essential values must be empty or full length");
  ReducedSystem sys;
  sys.full.assign(n, 0.0);
  std::vector<std::size_t> reduced_index(n, npos);
  for (std::size_t i = 0; i < n; ++i) {
    if (space.is_essential(i)) {
      if (!essential_values.empty()) sys.full[i] = essential_values[i];
    } else {
      if (!essential_values.empty() && essential_values[i] != 0.0) {
        std::ostringstream msg;
        msg << "apply_essential: trace data given on non-essential dof " << i;
        throw ContractError(msg.str());
      }
      reduced_index[i] = sys.free_dofs.size();
      sys.free_dofs.push_back(i);
    }
  }
  const std::size_t nf = sys.free_dofs.size();
  TripletBuilder builder(nf, nf);
  sys.rhs.assign(nf, 0.0);
  const auto off = a.row_offsets();
  const auto col = a.col_indices();
  const auto val = a.values();
  for (std::size_t r = 0; r < nf; ++r) {
    const std::size_t i = sys.free_dofs[r];
    double s = b[i];
    for (std::size_t k = off[i]; k < off[i + 1]; ++k) {
      const std::size_t j = col[k];
      if (reduced_index[j] != npos) builder.add(r, reduced_index[j], val[k]);
      else s -= val[k] * sys.full[j];
    }
    sys.rhs[r] = s;
  }
  sys.matrix = builder.build();
  return sys;
}

Vector expand_solution(const ReducedSystem& sys, std::span<const double> reduced) {
  EQFEM_REQUIRE(reduced.size() == sys.free_dofs.size(), "expand_solution: dimension mismatch");
  Vector full = sys.full;
  for (std::size_t r = 0; r < reduced.size(); ++r) full[sys.free_dofs[r]] = reduced[r];
  return full;
}

namespace {

std::vector<std::vector<std::size_t>> vertex_triangles(const Mesh& mesh) {
  std::vector<std::vector<std::size_t>> out(mesh.num_vertices());
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t)
    for (const std::size_t v : mesh.triangle(t)) out[v].push_back(t);
  return out;
}

double edge_moment(const Mesh& mesh, std::size_t e, const VectorFn& v, int region, bool normal) {
  const auto& rule = edge_gauss2();
  const Vec2 a = mesh.vertex(mesh.edges()[e].first), b = mesh.vertex(mesh.edges()[e].second);
  const Vec2 dir = normal ? mesh.edge_normal(e) : mesh.edge_tangent(e);
  double s = 0.0;
  for (std::size_t k = 0; k < 2; ++k) s += rule.w[k] * dot(v(a + rule.s[k] * (b - a), region), dir);
  return s * mesh.edge_length(e);
}

}  // namespace

FeFunction interpolate(std::shared_ptr<const FeSpace> space, const ScalarFn& f) {
  EQFEM_REQUIRE(space->kind() == SpaceKind::NodalP1, "interpolate: scalar fields need a P1 space");
  const Mesh& mesh = space->mesh();
  const auto incident = vertex_triangles(mesh);
  Vector c(mesh.num_vertices(), 0.0);
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    bool first = true;
    for (const std::size_t t : incident[v]) {
      const double val = f(mesh.vertex(v), mesh.region(t));
      if (first) {
        c[v] = val;
        first = false;
      } else if (!agree(c[v], val)) {
        two_sided_failure("vertex", v, c[v], val);
      }
    }
  }
  return FeFunction(std::move(space), std::move(c));
}

FeFunction interpolate(std::shared_ptr<const FeSpace> space, const VectorFn& v) {
  EQFEM_REQUIRE(space->kind() != SpaceKind::NodalP1, "interpolate: vector fields need an RT0 or N0 space");
  const Mesh& mesh = space->mesh();
  const bool normal = space->kind() == SpaceKind::EdgeRT0;
  Vector c(mesh.num_edges(), 0.0);
  for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
    const auto& tris = mesh.edge_triangles(e);
    c[e] = edge_moment(mesh, e, v, mesh.region(tris[0]), normal);
    if (tris[1] != npos && mesh.region(tris[1]) != mesh.region(tris[0])) {
      const double other = edge_moment(mesh, e, v, mesh.region(tris[1]), normal);
      if (!agree(c[e], other)) two_sided_failure("edge", e, c[e], other);
    }
  }
  return FeFunction(std::move(space), std::move(c));
}

Vector essential_trace(const FeSpace& space, const ScalarFn& g) {
  EQFEM_REQUIRE(space.kind() == SpaceKind::NodalP1, "essential_trace: scalar data needs a P1 space");
  const Mesh& mesh = space.mesh();
  Vector out(space.dof_count(), 0.0);
  for (const std::size_t e : mesh.boundary_edges()) {
    const int region = mesh.region(mesh.edge_triangles(e)[0]);
    for (const std::size_t v : {mesh.edges()[e].first, mesh.edges()[e].second})
      if (space.is_essential(v)) out[v] = g(mesh.vertex(v), region);
  }
  return out;
}

Vector essential_trace(const FeSpace& space, const VectorFn& g) {
  EQFEM_REQUIRE(space.kind() != SpaceKind::NodalP1, "essential_trace: vector data needs an RT0 or N0 space");
  const Mesh& mesh = space.mesh();
  Vector out(space.dof_count(), 0.0);
  for (const std::size_t e : mesh.boundary_edges())
    if (space.is_essential(e))
      out[e] = edge_moment(mesh, e, g, mesh.region(mesh.edge_triangles(e)[0]), space.kind() == SpaceKind::EdgeRT0);
  return out;
}

VectorP1Function gradient_average(const FeFunction& u, const PiecewiseTensor& alpha) {
  EQFEM_REQUIRE(u.space->kind() == SpaceKind::NodalP1, "gradient_average: P1 function required");
  const Mesh& mesh = u.mesh();
  const auto incident = vertex_triangles(mesh);
  VectorP1Function p{u.space->mesh_ptr(), std::vector<Vec2>(mesh.num_vertices())};
  for (std::size_t v = 0; v < mesh.num_vertices(); ++v) {
    Vec2 sum{};
    for (const std::size_t t : incident[v]) sum = sum + alpha.at(mesh.region(t)).apply(grad_p1(u, t));
    p.nodal[v] = (1.0 / static_cast<double>(incident[v].size())) * sum;
  }
  return p;
}

}  // namespace eqfem
