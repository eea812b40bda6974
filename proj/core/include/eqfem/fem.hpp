#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "eqfem/mesh.hpp"
#include "eqfem/sparse.hpp"

namespace eqfem {

/// 2x2 matrix (row-major).
struct Mat2 {
  double xx = 0.0, xy = 0.0, yx = 0.0, yy = 0.0;

  static Mat2 identity(double s = 1.0) { return {s, 0.0, 0.0, s}; }
  static Mat2 diag(double a, double b) { return {a, 0.0, 0.0, b}; }
  Vec2 apply(Vec2 v) const { return {xx * v.x + xy * v.y, yx * v.x + yy * v.y}; }
  double det() const { return xx * yy - xy * yx; }
  Mat2 inverse() const;
  bool is_spd() const;
};

/// Symmetric positive definite 2x2 tensor per region label. Missing regions are an error on lookup.
class PiecewiseTensor {
public:
  PiecewiseTensor() = default;
  /// Same value on every region.
  explicit PiecewiseTensor(Mat2 value);
  explicit PiecewiseTensor(std::map<int, Mat2> values);

  const Mat2& at(int region) const;
  const Mat2& inverse_at(int region) const;

private:
  std::map<int, Mat2> values_, inverses_;
  bool uniform_ = false;
};

/// Positive scalar per region label.
class PiecewiseScalar {
public:
  PiecewiseScalar() = default;
  explicit PiecewiseScalar(double value);
  explicit PiecewiseScalar(std::map<int, double> values);

  double at(int region) const;

private:
  std::map<int, double> values_;
  bool uniform_ = false;
};

using ScalarFn = std::function<double(Vec2, int region)>;
using VectorFn = std::function<Vec2(Vec2, int region)>;

enum class SpaceKind { NodalP1, EdgeRT0, EdgeN0 };

/// Lowest-order space on a mesh. Essential dofs are those on boundary edges whose
/// tag kind is listed in `essential` (vertices of such edges for P1).
class FeSpace {
public:
  FeSpace(std::shared_ptr<const Mesh> mesh, SpaceKind kind, std::vector<BoundaryKind> essential = {});

  SpaceKind kind() const noexcept { return kind_; }
  const Mesh& mesh() const noexcept { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const noexcept { return mesh_; }
  std::size_t dof_count() const noexcept { return essential_.size(); }
  bool is_essential(std::size_t dof) const { return essential_[dof] != 0; }
  const std::vector<char>& essential_mask() const noexcept { return essential_; }
  std::size_t essential_count() const;
  /// Global dofs of triangle t: vertex ids for P1, edge ids for RT0/N0 (local order = local edge order).
  std::array<std::size_t, 3> element_dofs(std::size_t t) const;

private:
  std::shared_ptr<const Mesh> mesh_;
  SpaceKind kind_;
  std::vector<char> essential_;
};

/// Coefficient vector bound to a space. RT0 dofs are fluxes through the canonical edge normal,
/// N0 dofs are tangential integrals along the canonical edge direction (low -> high vertex).
struct FeFunction {
  std::shared_ptr<const FeSpace> space;
  Vector coeffs;

  FeFunction() = default;
  FeFunction(std::shared_ptr<const FeSpace> s, Vector c);
  static FeFunction zero(std::shared_ptr<const FeSpace> s);
  const Mesh& mesh() const { return space->mesh(); }
};

/// Continuous piecewise-linear vector field given by nodal values.
struct VectorP1Function {
  std::shared_ptr<const Mesh> mesh;
  std::vector<Vec2> nodal;
};

// --- basis evaluation on triangle t ---

/// Local RT0 (or N0) basis values at a barycentric point, including the global sign.
std::array<Vec2, 3> rt0_basis(const Mesh& mesh, std::size_t t, const std::array<double, 3>& bary);
std::array<Vec2, 3> n0_basis(const Mesh& mesh, std::size_t t, const std::array<double, 3>& bary);
/// Divergence of local RT0 basis functions (constant), signed.
std::array<double, 3> rt0_div(const Mesh& mesh, std::size_t t);
/// Rotation of local N0 basis functions (constant), signed.
std::array<double, 3> n0_rot(const Mesh& mesh, std::size_t t);

/// co-gradient (d2 u, -d1 u)
inline Vec2 perp_grad(Vec2 g) { return {g.y, -g.x}; }

// --- evaluation of functions ---

double eval_p1(const FeFunction& u, std::size_t t, const std::array<double, 3>& bary);
Vec2 grad_p1(const FeFunction& u, std::size_t t);
Vec2 cograd_p1(const FeFunction& u, std::size_t t);
/// Value of an RT0 or N0 function.
Vec2 eval_edge(const FeFunction& v, std::size_t t, const std::array<double, 3>& bary);
double div_rt0(const FeFunction& p, std::size_t t);
double rot_n0(const FeFunction& e, std::size_t t);
Vec2 eval_vp1(const VectorP1Function& p, std::size_t t, const std::array<double, 3>& bary);
double div_vp1(const VectorP1Function& p, std::size_t t);

// --- assembly ---

enum class BilinearForm {
  P1Stiffness,        ///< int alpha grad u . grad v           (tensor)
  P1Mass,             ///< int rho u v                         (scalar)
  P1CoGradStiffness,  ///< int eps^{-1} perp u . perp v        (tensor, inverted)
  RT0Mass,            ///< int alpha^{-1} p . q                (tensor, inverted)
  RT0DivDiv,          ///< int rho^{-1} div p div q            (scalar, inverted)
  N0Mass,             ///< int eps E . F                       (tensor)
  N0CurlCurl,         ///< int mu^{-1} rot E rot F             (scalar, inverted)
};

using Coefficient = std::variant<PiecewiseTensor, PiecewiseScalar>;

/// Assembles a bilinear form with a quadrature rule of the given degree. Element matrices are
/// computed (optionally in parallel) into per-element slots and merged in element order.
SparseMatrix assemble(const FeSpace& space, BilinearForm form, const Coefficient& coefficient, int degree = 4);

/// int f v for P1.
Vector load_p1(const FeSpace& space, const ScalarFn& f, int degree = 10);
/// -int rho^{-1} f div q for RT0.
Vector load_rt0_div(const FeSpace& space, const ScalarFn& f, const PiecewiseScalar& rho, int degree = 10);
/// int J . F for N0.
Vector load_n0(const FeSpace& space, const VectorFn& j, int degree = 10);
/// int eps^{-1} J . perp v for P1.
Vector load_p1_cograd(const FeSpace& space, const VectorFn& j, const PiecewiseTensor& eps, int degree = 10);

// --- essential boundary conditions ---

struct ReducedSystem {
  SparseMatrix matrix;           ///< free-free block
  Vector rhs;                    ///< b_free - A_free,ess g
  std::vector<std::size_t> free_dofs;
  Vector full;                   ///< essential values in place, free entries zero
};

/// Symmetric elimination of the essential dofs with values `essential_values` (full length;
/// entries on free dofs must be zero, otherwise ContractError).
ReducedSystem apply_essential(const FeSpace& space, const SparseMatrix& a, std::span<const double> b,
                              std::span<const double> essential_values = {});
/// Scatters a reduced solution back into a full coefficient vector.
Vector expand_solution(const ReducedSystem& sys, std::span<const double> reduced);

// --- interpolation ---

/// Canonical interpolation: vertex values (P1), edge flux / tangential integrals by 2-point
/// Gauss (RT0 / N0). Fields are sampled from every adjacent region and must agree to 1e-12.
FeFunction interpolate(std::shared_ptr<const FeSpace> space, const ScalarFn& f);
FeFunction interpolate(std::shared_ptr<const FeSpace> space, const VectorFn& v);

/// Trace data on the essential dofs only (interpolated), zero elsewhere.
Vector essential_trace(const FeSpace& space, const ScalarFn& g);
Vector essential_trace(const FeSpace& space, const VectorFn& g);

/// Arithmetic mean of alpha grad u over the triangles incident to each vertex.
VectorP1Function gradient_average(const FeFunction& u, const PiecewiseTensor& alpha);

}  // namespace eqfem
