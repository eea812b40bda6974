#include "eqfem/adaptivity.hpp"

#include <cmath>
#include <memory>

#include "eqfem/error.hpp"

namespace eqfem {

namespace {

MixedPair solve_case(const ManufacturedCase& c, const std::shared_ptr<const Mesh>& mesh, const SolveSettings& s) {
  if (const auto* rc = std::get_if<RdCase>(&c)) return solve_rd(rc->problem, mesh, s);
  return solve_ec2d(std::get<EcCase>(c).problem, mesh, s);
}

bool has_exact(const ManufacturedCase& c) {
  return std::visit([](const auto& x) { return x.exact.has_value(); }, c);
}

std::vector<double> element_errors(const ManufacturedCase& c, const MixedPair& pair, int degree) {
  if (const auto* rc = std::get_if<RdCase>(&c)) {
    const auto& s = std::get<RdSolution>(pair);
    return element_errors_rd(rc->problem, *rc->exact, s.u, FluxField(s.p), degree);
  }
  const auto& ec = std::get<EcCase>(c);
  const auto& s = std::get<EcSolution>(pair);
  return element_errors_ec2d(ec.problem, *ec.exact, s.e, s.h, degree);
}

}  // namespace

MajorantReport evaluate_pair(const ManufacturedCase& c, const FeFunction& u, const FluxField& p, int degree) {
  const auto& rc = std::get<RdCase>(c);
  MajorantReport r = majorant_rd(rc.problem, u, p, degree);
  std::optional<double> err;
  if (rc.exact) err = exact_combined_error_rd(rc.problem, *rc.exact, u, p, degree);
  equality_report(r, err);
  return r;
}

MajorantReport evaluate_pair(const ManufacturedCase& c, const MixedPair& pair, int degree) {
  if (std::holds_alternative<RdCase>(c)) {
    const auto& s = std::get<RdSolution>(pair);
    return evaluate_pair(c, s.u, FluxField(s.p), degree);
  }
  const auto& ec = std::get<EcCase>(c);
  const auto& s = std::get<EcSolution>(pair);
  MajorantReport r = majorant_ec2d(ec.problem, s.e, s.h, degree);
  std::optional<double> err;
  if (ec.exact) err = exact_combined_error_ec2d(ec.problem, *ec.exact, s.e, s.h, degree);
  equality_report(r, err);
  return r;
}

AmrResult amr_run(const ManufacturedCase& c, const Mesh& initial, Indicator indicator, const AmrSettings& settings,
                  const AmrObserver& observer) {
  EQFEM_REQUIRE(settings.fraction > 0.0 && settings.fraction <= 1.0, "amr_run: fraction must lie in (0, 1]");
  if (indicator == Indicator::ExactError && !has_exact(c))
    throw ContractError("amr_run: the exact-error indicator needs a manufactured case");

  AmrResult result{{}, initial, {}};
  for (std::size_t it = 0;; ++it) {
    auto mesh = std::make_shared<const Mesh>(result.final_mesh);
    MixedPair pair = solve_case(c, mesh, settings.solve);
    const MajorantReport rep = evaluate_pair(c, pair, settings.degree);
    const std::vector<double> values =
        indicator == Indicator::Majorant ? rep.eta_sq : element_errors(c, pair, settings.degree);

    AmrRecord rec;
    rec.iteration = it;
    rec.n_elem = mesh->num_triangles();
    rec.value = indicator == Indicator::Majorant ? std::sqrt(rep.global) : std::sqrt(*rep.combined_error_sq);
    rec.normalized = rep.normalized;
    rec.delta = rep.delta;
    const bool last = it == settings.iterations ||
                      (settings.stop_at_elements > 0 && rec.n_elem >= settings.stop_at_elements);
    MarkedSet marked;
    if (!last) marked = mark_fixed_fraction(values, settings.fraction);
    rec.marked = marked.size();
    result.records.push_back(rec);
    if (observer) observer(rec, *mesh);
    if (last) {
      result.final_pair = std::move(pair);
      break;
    }
    result.final_mesh = refine_marked(*mesh, marked);
  }
  return result;
}

std::vector<CompareRow> compare_indicators(const ManufacturedCase& c, const Mesh& initial,
                                           const AmrSettings& settings) {
  const AmrResult opt = amr_run(c, initial, Indicator::ExactError, settings);
  const AmrResult maj = amr_run(c, initial, Indicator::Majorant, settings);
  std::vector<CompareRow> rows;
  for (std::size_t i = 0; i < opt.records.size(); ++i) {
    CompareRow row;
    row.iteration = i;
    row.n_opt = opt.records[i].n_elem;
    row.n_maj = maj.records[i].n_elem;
    row.diff_pct = 100.0 * std::abs(static_cast<double>(row.n_opt) - static_cast<double>(row.n_maj)) /
                   static_cast<double>(row.n_opt);
    rows.push_back(row);
  }
  return rows;
}

std::vector<ConvergenceRow> convergence_table(const ManufacturedCase& c, const Mesh& initial,
                                              const ConvergenceSettings& settings) {
  EQFEM_REQUIRE(settings.rows >= 1, "convergence_table: need at least one row");
  const bool rd = std::holds_alternative<RdCase>(c);
  if (!rd && settings.method != PairMethod::Fem)
    throw ContractError("convergence_table: only the FEM pair is available for eddy-current cases");

  std::vector<ConvergenceRow> rows;
  Mesh current = initial;
  for (std::size_t k = 0; k < settings.rows; ++k) {
    if (k > 0) current = uniform_refine(current);
    auto mesh = std::make_shared<const Mesh>(current);
    MajorantReport rep;
    if (!rd || settings.method == PairMethod::Fem) {
      rep = evaluate_pair(c, solve_case(c, mesh, settings.solve), settings.degree);
    } else {
      const auto& rc = std::get<RdCase>(c);
      if (settings.method == PairMethod::Undersolve) {
        const RdSolution s = iterative_undersolve(rc.problem, mesh, settings.crude_tol, settings.solve);
        rep = evaluate_pair(c, s.u, FluxField(s.p), settings.degree);
      } else {
        const RdSolution s = solve_rd(rc.problem, mesh, settings.solve);
        rep = evaluate_pair(c, s.u, FluxField(gradient_average(s.u, rc.problem.alpha)), settings.degree);
      }
    }
    ConvergenceRow row;
    row.n_elem = mesh->num_triangles();
    row.majorant = std::sqrt(rep.global);
    if (rep.combined_error_sq) row.error = std::sqrt(*rep.combined_error_sq);
    row.delta = rep.delta;
    row.delta_rel = rep.delta_rel;
    row.normalized = rep.normalized;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace eqfem
