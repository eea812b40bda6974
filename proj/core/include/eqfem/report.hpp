#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "eqfem/adaptivity.hpp"

namespace eqfem {

/// %.12g; empty for an absent value.
std::string format_g12(std::optional<double> v);

/// n_elem,error,majorant,delta,normalized
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);
/// iter,n_elem,value,normalized
std::string amr_csv(const std::vector<AmrRecord>& records);
/// iter,n_opt,n_maj,diff_pct
std::string compare_csv(const std::vector<CompareRow>& rows);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};
/// Log-log line plot on a fixed 1000 x 1000 canvas. Non-positive points are skipped.
std::string loglog_svg(const std::vector<Series>& series, const std::string& x_label, const std::string& y_label);
std::string convergence_svg(const std::vector<ConvergenceRow>& rows);

/// Writes text to a file, throwing Error on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace eqfem
