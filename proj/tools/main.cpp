#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "eqfem/abstract.hpp"
#include "eqfem/adaptivity.hpp"
#include "eqfem/config.hpp"
#include "eqfem/error.hpp"
#include "eqfem/mesh_io.hpp"
#include "eqfem/problems.hpp"
#include "eqfem/report.hpp"

namespace fs = std::filesystem;
using namespace eqfem;

namespace {

constexpr int kOk = 0;
constexpr int kRuntime = 1;
constexpr int kUsage = 2;

// Thrown for argument combinations CLI11 cannot validate on its own.
struct UsageError : Error {
  using Error::Error;
};

struct VerifyOptions {
  std::size_t n = 50;
  std::size_t m = 40;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
};

struct RunOptions {
  std::string case_id = "rd-poly";
  std::string config;
  std::size_t refine = 4;
  int quad_degree = 10;
  std::string solver = "direct";
  double tol = 1e-12;
  fs::path out = ".";
};

struct AmrOptions {
  std::string case_id = "ex7";
  double fraction = 0.3;
  std::size_t iters = 9;
  std::string indicator = "majorant";
  int quad_degree = 10;
  fs::path out = ".";
};

struct RenderOptions {
  fs::path mesh;
  fs::path out;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

int cmd_verify_abstract(const VerifyOptions& o) {
  RandomSystemGenerator gen(o.seed);
  const OperatorSystem sys = gen.system(o.m, o.n);
  double max_delta_rel = 0.0, max_deficit = 0.0;
  for (std::size_t k = 0; k < o.trials; ++k) {
    const Vector f = gen.vector(o.n);
    const MixedSolution approx{gen.vector(o.n), gen.vector(o.m)};
    max_delta_rel = std::max(max_delta_rel, equality_residual(sys, f, approx).delta_rel);
    const double f_norm = std::sqrt(sys.w1_inv_norm_sq(f));
    if (f_norm > 0.0) max_deficit = std::max(max_deficit, isometry_deficit(sys, f) / f_norm);
  }
  const Vector f = gen.vector(o.n);
  const SharpnessReport sharp = sharpness_check(sys, f, gen.vector(o.n), gen.vector(o.m), o.trials, o.seed);
  const double sharp_rel = std::max(sharp.primal_equality_rel, sharp.dual_equality_rel);

  const double limit = 1e-10;
  const bool ok = max_delta_rel <= limit && max_deficit <= limit && sharp_rel <= limit && sharp.violations == 0;
  std::cout << "max_delta_rel " << sci(max_delta_rel) << (max_delta_rel <= limit ? " < 1e-10" : " >= 1e-10")
            << ", max_isometry_deficit " << sci(max_deficit) << ", sharpness_rel " << sci(sharp_rel)
            << ", sharpness_violations " << sharp.violations << " (n " << o.n << ", m " << o.m << ", trials "
            << o.trials << ", seed " << o.seed << ")\n";
  return ok ? kOk : kRuntime;
}

struct NamedRun {
  ManufacturedCase c;
  PairMethod method = PairMethod::Fem;
};

NamedRun resolve_run_case(const RunOptions& o) {
  if (!o.config.empty()) return {load_problem(o.config), PairMethod::Fem};
  static const std::map<std::string, std::pair<std::string, PairMethod>> cases = {
      {"rd-poly", {"rd_poly_2d", PairMethod::Fem}},   {"ex2", {"rd_poly_2d", PairMethod::Undersolve}},
      {"ex3", {"rd_poly_2d", PairMethod::Averaged}},  {"ex4", {"ec_ex4", PairMethod::Fem}},
      {"robin", {"rd_robin", PairMethod::Fem}},       {"inhomo", {"rd_linear_inhomo", PairMethod::Fem}},
  };
  const auto it = cases.find(o.case_id);
  if (it == cases.end()) throw UsageError("unknown case '" + o.case_id + "'");
  return {manufactured_registry(it->second.first), it->second.second};
}

int cmd_run(const RunOptions& o) {
  const NamedRun run = resolve_run_case(o);
  ConvergenceSettings settings;
  settings.rows = o.refine;
  settings.degree = o.quad_degree;
  settings.method = run.method;
  settings.solve.solver.method = o.solver == "cg" ? SolverMethod::Cg : SolverMethod::Direct;
  settings.solve.solver.tol = o.tol;
  const Mesh initial = std::visit([](const auto& c) { return c.initial_mesh(); }, run.c);
  const std::vector<ConvergenceRow> rows = convergence_table(run.c, initial, settings);

  fs::create_directories(o.out);
  write_text(o.out / "table.csv", convergence_csv(rows));
  write_text(o.out / "convergence.svg", convergence_svg(rows));
  for (const ConvergenceRow& r : rows)
    std::cout << r.n_elem << " elements: majorant " << sci(r.majorant)
              << (r.error ? ", error " + sci(*r.error) + ", delta " + sci(*r.delta) : std::string()) << "\n";
  return kOk;
}

int cmd_amr(const AmrOptions& o) {
  AmrSettings settings;
  settings.fraction = o.fraction;
  settings.iterations = o.iters;
  settings.degree = o.quad_degree;
  const Indicator indicator = o.indicator == "exact" ? Indicator::ExactError : Indicator::Majorant;

  ManufacturedCase c;
  Mesh initial;
  if (o.case_id == "ex6") {
    const EcCase ec = std::get<EcCase>(manufactured_registry("ec_ex4"));
    initial = rect_structured(10, 10, Diagonal::Main, ec.region, ec.boundary);
    c = ec;
  } else if (o.case_id == "ex7" || o.case_id == "ex8") {
    const EcCase ec = o.case_id == "ex7" ? scenario_ex7() : scenario_ex8();
    if (indicator == Indicator::ExactError) throw UsageError("case " + o.case_id + " has no exact solution");
    initial = ec.initial_mesh();
    c = ec;
  } else {
    throw UsageError("unknown case '" + o.case_id + "'");
  }

  fs::create_directories(o.out);
  const AmrResult result = amr_run(c, initial, indicator, settings, [&](const AmrRecord& rec, const Mesh& mesh) {
    write_text(o.out / ("mesh_iter" + std::to_string(rec.iteration) + ".svg"), render_svg(mesh));
    std::cout << "iter " << rec.iteration << ": " << rec.n_elem << " elements, value " << sci(rec.value)
              << (rec.normalized ? ", normalized " + sci(*rec.normalized) : std::string()) << "\n";
  });
  write_text(o.out / "amr.csv", amr_csv(result.records));

  if (o.case_id == "ex6") {
    const std::vector<CompareRow> rows = compare_indicators(c, initial, settings);
    write_text(o.out / "compare.csv", compare_csv(rows));
    double worst = 0.0;
    for (const CompareRow& r : rows) worst = std::max(worst, r.diff_pct);
    std::cout << "indicator comparison: max diff_pct " << format_g12(worst) << "\n";
  }
  return kOk;
}

int cmd_render(const RenderOptions& o) {
  const Mesh mesh = load_mesh(o.mesh.string());
  if (o.out.has_parent_path()) fs::create_directories(o.out.parent_path());
  write_text(o.out, render_svg(mesh));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Error equality verification for mixed finite element approximations"};
  app.require_subcommand(1);

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify-abstract", "Check the error equality on random operator systems");
  verify_cmd->add_option("--n", verify.n, "Primal dimension")->check(CLI::Range(1, 500));
  verify_cmd->add_option("--m", verify.m, "Dual dimension")->check(CLI::Range(1, 500));
  verify_cmd->add_option("--trials", verify.trials, "Random approximations and competitors")
      ->check(CLI::Range(1, 1000000));
  verify_cmd->add_option("--seed", verify.seed, "Generator seed");

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Convergence table for a manufactured case");
  run_cmd->add_option("--case", run.case_id, "rd-poly | ex2 | ex3 | ex4 | robin | inhomo");
  run_cmd->add_option("--config", run.config, "Problem file; overrides --case")->check(CLI::ExistingFile);
  run_cmd->add_option("--refine", run.refine, "Number of rows (uniform refinements + 1)")->check(CLI::Range(1, 8));
  run_cmd->add_option("--quad-degree", run.quad_degree, "Quadrature degree for the estimates")
      ->check(CLI::Range(1, 10));
  run_cmd->add_option("--solver", run.solver, "direct | cg")->check(CLI::IsMember({"direct", "cg"}));
  run_cmd->add_option("--tol", run.tol, "Relative residual for cg")->check(CLI::PositiveNumber);
  run_cmd->add_option("--out", run.out, "Output directory");

  AmrOptions amr;
  auto* amr_cmd = app.add_subcommand("amr", "Adaptive refinement driven by the majorant or the exact error");
  amr_cmd->add_option("--case", amr.case_id, "ex6 | ex7 | ex8");
  amr_cmd->add_option("--fraction", amr.fraction, "Marked fraction in (0, 1]")
      ->check(CLI::Range(0.0, 1.0) & CLI::PositiveNumber);
  amr_cmd->add_option("--iters", amr.iters, "Refinement steps")->check(CLI::Range(0, 40));
  amr_cmd->add_option("--indicator", amr.indicator, "exact | majorant")
      ->check(CLI::IsMember({"exact", "majorant"}));
  amr_cmd->add_option("--quad-degree", amr.quad_degree, "Quadrature degree for the estimates")
      ->check(CLI::Range(1, 10));
  amr_cmd->add_option("--out", amr.out, "Output directory");

  RenderOptions render;
  auto* render_cmd = app.add_subcommand("render", "Render a mesh file as an SVG wireframe");
  render_cmd->add_option("--mesh", render.mesh, "Mesh file")->required();
  render_cmd->add_option("--out", render.out, "SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*verify_cmd) return cmd_verify_abstract(verify);
    if (*run_cmd) return cmd_run(run);
    if (*amr_cmd) return cmd_amr(amr);
    if (*render_cmd) return cmd_render(render);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kUsage;
}
