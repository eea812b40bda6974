#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "eqfem/error.hpp"
#include "eqfem/report.hpp"

using namespace eqfem;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST(Report, FormatG12) {
  EXPECT_EQ(format_g12(0.1), "0.1");
  EXPECT_EQ(format_g12(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_g12(1e-20), "1e-20");
  EXPECT_EQ(format_g12(std::nullopt), "");
}

TEST(Report, ConvergenceCsv) {
  std::vector<ConvergenceRow> rows(2);
  rows[0] = {200, 0.5, 0.5, 0.0, 0.0, 0.25};
  rows[1] = {800, std::nullopt, 0.125, std::nullopt, std::nullopt, std::nullopt};
  const auto l = lines(convergence_csv(rows));
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0], "n_elem,error,majorant,delta,normalized");
  EXPECT_EQ(l[1], "200,0.5,0.5,0,0.25");
  EXPECT_EQ(l[2], "800,,0.125,,");
}

TEST(Report, AmrCsv) {
  std::vector<AmrRecord> rec(2);
  rec[0].iteration = 0;
  rec[0].n_elem = 96;
  rec[0].value = 2.0;
  rec[0].normalized = 0.5;
  rec[1].iteration = 1;
  rec[1].n_elem = 150;
  rec[1].value = 1.0;
  const auto l = lines(amr_csv(rec));
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0], "iter,n_elem,value,normalized");
  EXPECT_EQ(l[1], "0,96,2,0.5");
  EXPECT_EQ(l[2], "1,150,1,");
}

TEST(Report, CompareCsv) {
  const auto l = lines(compare_csv({CompareRow{0, 200, 200, 0.0}, CompareRow{1, 434, 440, 1.5}}));
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0], "iter,n_opt,n_maj,diff_pct");
  EXPECT_EQ(l[2], "1,434,440,1.5");
}

TEST(Report, LogLogSvg) {
  const std::string svg =
      loglog_svg({Series{"a", {1, 10, 100}, {1, 0.1, 0.01}}, Series{"b", {1, 10, 0}, {2, 0.2, 1}}}, "N", "error");
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("width=\"1000\""), std::string::npos);
  EXPECT_EQ(count(svg, "<polyline"), 2u);
  EXPECT_NE(svg.find(">a<"), std::string::npos);
  EXPECT_NE(svg.find(">N<"), std::string::npos);
}

TEST(Report, ConvergenceSvg) {
  std::vector<ConvergenceRow> rows{{200, 0.5, 0.5, 0.0, 0.0, 0.25}, {800, 0.25, 0.25, 0.0, 0.0, 0.125}};
  const std::string svg = convergence_svg(rows);
  EXPECT_EQ(count(svg, "<polyline"), 2u);
}

TEST(Report, WriteText) {
  const auto dir = std::filesystem::temp_directory_path() / "eqfem_report_test";
  std::filesystem::create_directories(dir);
  write_text(dir / "a.txt", "hello\n");
  std::ifstream in(dir / "a.txt");
  std::string s;
  std::getline(in, s);
  EXPECT_EQ(s, "hello");
  std::filesystem::remove_all(dir);
  EXPECT_THROW(write_text(dir / "missing" / "a.txt", "x"), Error);
}
