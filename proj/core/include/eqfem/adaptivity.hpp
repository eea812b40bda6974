#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "eqfem/majorant.hpp"
#include "eqfem/mesh.hpp"
#include "eqfem/problems.hpp"

namespace eqfem {

enum class Indicator { ExactError, Majorant };

struct AmrRecord {
  std::size_t iteration = 0;
  std::size_t n_elem = 0;
  double value = 0.0;  ///< combined error (ExactError) or sqrt of the majorant
  std::optional<double> normalized;
  std::size_t marked = 0;
  std::optional<double> delta;
};

struct AmrSettings {
  double fraction = 0.3;
  std::size_t iterations = 9;
  std::size_t stop_at_elements = 0;  ///< when nonzero, stop early once a mesh reaches this size
  int degree = 10;
  SolveSettings solve;
};

using MixedPair = std::variant<RdSolution, EcSolution>;

struct AmrResult {
  std::vector<AmrRecord> records;  ///< at most iterations + 1 entries, the last with marked = 0
  Mesh final_mesh;
  MixedPair final_pair;
};

/// Called after each solve with the current record and mesh.
using AmrObserver = std::function<void(const AmrRecord&, const Mesh&)>;

/// Solve, estimate, mark the fixed fraction, refine; repeated `iterations` times.
AmrResult amr_run(const ManufacturedCase& c, const Mesh& initial, Indicator indicator, const AmrSettings& settings,
                  const AmrObserver& observer = {});

struct CompareRow {
  std::size_t iteration = 0;
  std::size_t n_opt = 0;  ///< exact-error driven
  std::size_t n_maj = 0;  ///< majorant driven
  double diff_pct = 0.0;  ///< 100 |n_opt - n_maj| / n_opt
};
std::vector<CompareRow> compare_indicators(const ManufacturedCase& c, const Mesh& initial, const AmrSettings& settings);

/// How the approximation pair of a convergence row is produced.
enum class PairMethod {
  Fem,          ///< mixed FEM pair from direct (or configured) solves
  Undersolve,   ///< crude unpreconditioned CG
  Averaged,     ///< P1 primal and averaged flux alpha grad u
};

struct ConvergenceRow {
  std::size_t n_elem = 0;
  std::optional<double> error;  ///< sqrt of the combined error
  double majorant = 0.0;        ///< sqrt of the majorant
  std::optional<double> delta;
  std::optional<double> delta_rel;
  std::optional<double> normalized;
};

struct ConvergenceSettings {
  std::size_t rows = 4;
  int degree = 10;
  PairMethod method = PairMethod::Fem;
  double crude_tol = 1e-4;
  SolveSettings solve;
};

/// Evaluates the case on `initial` and on rows - 1 successive uniform refinements.
std::vector<ConvergenceRow> convergence_table(const ManufacturedCase& c, const Mesh& initial,
                                              const ConvergenceSettings& settings);

/// Majorant report (with exact error when available) of one approximation of a case.
MajorantReport evaluate_pair(const ManufacturedCase& c, const MixedPair& pair, int degree);
MajorantReport evaluate_pair(const ManufacturedCase& c, const FeFunction& u, const FluxField& p, int degree);

}  // namespace eqfem
