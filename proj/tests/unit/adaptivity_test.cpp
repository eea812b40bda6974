#include <gtest/gtest.h>

#include "eqfem/adaptivity.hpp"
#include "eqfem/error.hpp"

using namespace eqfem;

TEST(Adaptivity, AmrRecords) {
  const ManufacturedCase c = manufactured_registry("ec_ex4");
  const Mesh initial = rect_structured(10, 10, Diagonal::Main, std::get<EcCase>(c).region,
                                       std::get<EcCase>(c).boundary);
  AmrSettings settings;
  settings.iterations = 3;
  std::size_t calls = 0;
  const AmrResult r = amr_run(c, initial, Indicator::Majorant, settings, [&](const AmrRecord& rec, const Mesh& m) {
    EXPECT_EQ(rec.n_elem, m.num_triangles());
    ++calls;
  });
  ASSERT_EQ(r.records.size(), 4u);
  EXPECT_EQ(calls, 4u);
  EXPECT_EQ(r.records.front().n_elem, 200u);
  EXPECT_EQ(r.records.front().marked, 60u);
  EXPECT_EQ(r.records.back().marked, 0u);
  EXPECT_EQ(r.records.back().n_elem, r.final_mesh.num_triangles());
  for (std::size_t k = 1; k < r.records.size(); ++k) {
    EXPECT_GT(r.records[k].n_elem, r.records[k - 1].n_elem);
    EXPECT_EQ(r.records[k].iteration, k);
  }
  EXPECT_TRUE(r.records.front().delta.has_value());
  EXPECT_LE(*r.records.front().delta, 1e-9);
  EXPECT_TRUE(std::holds_alternative<EcSolution>(r.final_pair));
}

TEST(Adaptivity, StopAtElements) {
  const EcCase c = scenario_ex7();
  AmrSettings settings;
  settings.iterations = 20;
  settings.stop_at_elements = 400;
  const AmrResult r = amr_run(c, c.initial_mesh(), Indicator::Majorant, settings);
  EXPECT_GE(r.records.back().n_elem, 400u);
  EXPECT_LT(r.records[r.records.size() - 2].n_elem, 400u);
  for (std::size_t k = 1; k < r.records.size(); ++k) EXPECT_LT(r.records[k].value, r.records[k - 1].value);
}

TEST(Adaptivity, ExactIndicatorNeedsExactFields) {
  const EcCase c = scenario_ex7();
  EXPECT_THROW(amr_run(c, c.initial_mesh(), Indicator::ExactError, AmrSettings{}), ContractError);
}

TEST(Adaptivity, CompareIndicators) {
  const ManufacturedCase c = manufactured_registry("rd_poly_2d");
  AmrSettings settings;
  settings.iterations = 2;
  const std::vector<CompareRow> rows = compare_indicators(c, std::get<RdCase>(c).initial_mesh(), settings);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].n_opt, 200u);
  EXPECT_EQ(rows[0].n_maj, 200u);
  EXPECT_EQ(rows[0].diff_pct, 0.0);
  // the two indicators coincide elementwise for a mixed FEM pair, up to rounding
  for (const CompareRow& row : rows) EXPECT_LE(row.diff_pct, 5.0);
}

TEST(Adaptivity, ConvergenceTable) {
  const ManufacturedCase c = manufactured_registry("rd_poly_2d");
  ConvergenceSettings settings;
  settings.rows = 3;
  const auto rows = convergence_table(c, std::get<RdCase>(c).initial_mesh(), settings);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].n_elem, 200u);
  EXPECT_EQ(rows[1].n_elem, 800u);
  EXPECT_EQ(rows[2].n_elem, 3200u);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    ASSERT_TRUE(rows[k].error.has_value());
    EXPECT_LE(*rows[k].delta_rel, 1e-12);
    if (k > 0) {
      // first order: the error roughly halves per uniform refinement
      const double ratio = *rows[k - 1].error / *rows[k].error;
      EXPECT_GT(ratio, 1.7);
      EXPECT_LT(ratio, 2.3);
    }
  }
}

TEST(Adaptivity, ConvergenceMethodsDiffer) {
  const ManufacturedCase c = manufactured_registry("rd_poly_2d");
  ConvergenceSettings settings;
  settings.rows = 1;
  const double fem = *convergence_table(c, std::get<RdCase>(c).initial_mesh(), settings)[0].error;
  settings.method = PairMethod::Averaged;
  const double avg = *convergence_table(c, std::get<RdCase>(c).initial_mesh(), settings)[0].error;
  EXPECT_GT(avg, fem);
  settings.method = PairMethod::Undersolve;
  settings.crude_tol = 1e-3;
  const auto crude = convergence_table(c, std::get<RdCase>(c).initial_mesh(), settings)[0];
  EXPECT_GT(*crude.error, fem);
  EXPECT_LE(*crude.delta_rel, 1e-12);
}

TEST(Adaptivity, EvaluatePair) {
  const ManufacturedCase c = manufactured_registry("rd_linear_inhomo");
  const auto mesh = std::make_shared<const Mesh>(std::get<RdCase>(c).initial_mesh());
  const RdSolution s = solve_rd(std::get<RdCase>(c).problem, mesh);
  const MajorantReport r = evaluate_pair(c, MixedPair{s}, 10);
  ASSERT_TRUE(r.combined_error_sq.has_value());
  EXPECT_LE(*r.delta_rel, 1e-12);
  EXPECT_LE(r.global, 1e-18);
}

TEST(Adaptivity, RejectsBadSettings) {
  const ManufacturedCase c = manufactured_registry("rd_poly_2d");
  AmrSettings settings;
  settings.fraction = 0.0;
  EXPECT_THROW(amr_run(c, std::get<RdCase>(c).initial_mesh(), Indicator::Majorant, settings), ContractError);
  ConvergenceSettings conv;
  conv.rows = 0;
  EXPECT_THROW(convergence_table(c, std::get<RdCase>(c).initial_mesh(), conv), ContractError);
}
