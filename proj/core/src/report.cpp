#include "eqfem/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "eqfem/error.hpp"

namespace eqfem {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

std::string format_g12(std::optional<double> v) { return v ? fmt("%.12g", *v) : std::string(); }

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::ostringstream out;
  out << "n_elem,error,majorant,delta,normalized\n";
  for (const auto& r : rows)
    out << r.n_elem << ',' << format_g12(r.error) << ',' << format_g12(r.majorant) << ',' << format_g12(r.delta)
        << ',' << format_g12(r.normalized) << '\n';
  return out.str();
}

std::string amr_csv(const std::vector<AmrRecord>& records) {
  std::ostringstream out;
  out << "iter,n_elem,value,normalized\n";
  for (const auto& r : records)
    out << r.iteration << ',' << r.n_elem << ',' << format_g12(r.value) << ',' << format_g12(r.normalized) << '\n';
  return out.str();
}

std::string compare_csv(const std::vector<CompareRow>& rows) {
  std::ostringstream out;
  out << "iter,n_opt,n_maj,diff_pct\n";
  for (const auto& r : rows)
    out << r.iteration << ',' << r.n_opt << ',' << r.n_maj << ',' << format_g12(r.diff_pct) << '\n';
  return out.str();
}

std::string loglog_svg(const std::vector<Series>& series, const std::string& x_label, const std::string& y_label) {
  constexpr double size = 1000.0, left = 100.0, right = 40.0, top = 40.0, bottom = 100.0;
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
      x0 = std::min(x0, std::log10(s.x[i]));
      x1 = std::max(x1, std::log10(s.x[i]));
      y0 = std::min(y0, std::log10(s.y[i]));
      y1 = std::max(y1, std::log10(s.y[i]));
    }
  if (!(x0 <= x1)) x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  x0 = std::floor(x0), x1 = std::max(std::ceil(x1), x0 + 1.0);
  y0 = std::floor(y0), y1 = std::max(std::ceil(y1), y0 + 1.0);
  auto px = [&](double lx) { return left + (lx - x0) / (x1 - x0) * (size - left - right); };
  auto py = [&](double ly) { return size - bottom - (ly - y0) / (y1 - y0) * (size - top - bottom); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" viewBox=\"0 0 1000 1000\">\n";
  out << "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
  out << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << size - left - right << "\" height=\""
      << size - top - bottom << "\"/>\n";
  out << "</g>\n<g font-family=\"sans-serif\" font-size=\"20\">\n";
  for (double d = x0; d <= x1 + 0.5; d += 1.0)
    out << "<text x=\"" << fmt("%.3f", px(d)) << "\" y=\"" << size - bottom + 30 << "\" text-anchor=\"middle\">1e"
        << static_cast<int>(d) << "</text>\n";
  for (double d = y0; d <= y1 + 0.5; d += 1.0)
    out << "<text x=\"" << left - 10 << "\" y=\"" << fmt("%.3f", py(d) + 7.0) << "\" text-anchor=\"end\">1e"
        << static_cast<int>(d) << "</text>\n";
  out << "<text x=\"" << (left + size - right) / 2 << "\" y=\"" << size - 30 << "\" text-anchor=\"middle\">"
      << x_label << "</text>\n";
  out << "<text x=\"30\" y=\"" << (top + size - bottom) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 30 "
      << (top + size - bottom) / 2 << ")\">" << y_label << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k)
    out << "<text x=\"" << left + 20 << "\" y=\"" << top + 30 + 25 * k << "\" fill=\"" << colors[k % 5] << "\">"
        << series[k].label << "</text>\n";
  out << "</g>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    std::string points;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!(s.x[i] > 0.0) || !(s.y[i] > 0.0)) continue;
      if (!points.empty()) points += ' ';
      points += fmt("%.3f", px(std::log10(s.x[i]))) + ',' + fmt("%.3f", py(std::log10(s.y[i])));
    }
    out << "<polyline fill=\"none\" stroke=\"" << colors[k % 5] << "\" stroke-width=\"2\" points=\"" << points
        << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string convergence_svg(const std::vector<ConvergenceRow>& rows) {
  Series err{"error", {}, {}}, maj{"sqrt(majorant)", {}, {}};
  for (const auto& r : rows) {
    if (r.error) {
      err.x.push_back(static_cast<double>(r.n_elem));
      err.y.push_back(*r.error);
    }
    maj.x.push_back(static_cast<double>(r.n_elem));
    maj.y.push_back(r.majorant);
  }
  std::vector<Series> series;
  if (!err.x.empty()) series.push_back(err);
  series.push_back(maj);
  return loglog_svg(series, "elements", "value");
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace eqfem
