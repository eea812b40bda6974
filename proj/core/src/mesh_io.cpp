#include "eqfem/mesh_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "eqfem/error.hpp"

namespace eqfem {

void write_mesh(std::ostream& out, const Mesh& mesh) {
  char buf[128];
  out << "VERTICES " << mesh.num_vertices() << '\n';
  for (const Vec2& v : mesh.vertices()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v.x, v.y);
    out << buf;
  }
  out << "TRIANGLES " << mesh.num_triangles() << '\n';
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    out << tri[0] << ' ' << tri[1] << ' ' << tri[2] << ' ' << mesh.region(t) << '\n';
  }
  const auto boundary = mesh.boundary_edges();
  out << "BOUNDARY " << boundary.size() << '\n';
  for (const std::size_t e : boundary) {
    const auto tag = mesh.boundary_tag(e);
    out << mesh.edges()[e].first << ' ' << mesh.edges()[e].second << ' ' << to_string(tag.kind) << ' ' << tag.part
        << '\n';
  }
}

std::string mesh_to_string(const Mesh& mesh) {
  std::ostringstream out;
  write_mesh(out, mesh);
  return out.str();
}

namespace {

class LineReader {
public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Next non-empty, non-comment line split into tokens; false at end of input.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ss(line);
      tokens.clear();
      std::string tok;
      while (ss >> tok) tokens.push_back(tok);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  std::size_t line() const { return line_no_; }

private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

std::size_t to_index(const std::string& s, std::size_t line) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    if (!s.empty() && s[0] == '-') throw std::invalid_argument(s);
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    throw ParseError("expected a nonnegative integer, got '" + s + "'", line);
  }
  if (pos != s.size()) throw ParseError("expected a nonnegative integer, got '" + s + "'", line);
  return static_cast<std::size_t>(v);
}

int to_int(const std::string& s, std::size_t line) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + s + "'", line);
  }
  if (pos != s.size()) throw ParseError("expected an integer, got '" + s + "'", line);
  return v;
}

double to_real(const std::string& s, std::size_t line) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ParseError("expected a number, got '" + s + "'", line);
  }
  if (pos != s.size()) throw ParseError("expected a number, got '" + s + "'", line);
  return v;
}

std::size_t section(LineReader& r, std::vector<std::string>& tok, const char* name) {
  if (!r.next(tok)) throw ParseError(std::string("missing section ") + name, r.line() + 1);
  if (tok.size() != 2 || tok[0] != name)
    throw ParseError(std::string("expected section header '") + name + " <count>'", r.line());
  return to_index(tok[1], r.line());
}

}  // namespace

Mesh read_mesh(std::istream& in) {
  LineReader r(in);
  std::vector<std::string> tok;

  const std::size_t nv = section(r, tok, "VERTICES");
  std::vector<Vec2> verts(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    if (!r.next(tok)) throw ParseError("unexpected end of input in VERTICES", r.line());
    if (tok.size() != 2) throw ParseError("vertex line needs 2 values", r.line());
    verts[i] = {to_real(tok[0], r.line()), to_real(tok[1], r.line())};
  }

  const std::size_t nt = section(r, tok, "TRIANGLES");
  std::vector<std::array<std::size_t, 3>> tris(nt);
  std::vector<int> regions(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    if (!r.next(tok)) throw ParseError("unexpected end of input in TRIANGLES", r.line());
    if (tok.size() != 4) throw ParseError("triangle line needs 'a b c region'", r.line());
    for (std::size_t i = 0; i < 3; ++i) {
      tris[t][i] = to_index(tok[i], r.line());
      if (tris[t][i] >= nv) throw ParseError("vertex index out of range", r.line());
    }
    regions[t] = to_int(tok[3], r.line());
  }

  const std::size_t nb = section(r, tok, "BOUNDARY");
  std::map<EdgeKey, BoundaryTag> tags;
  for (std::size_t b = 0; b < nb; ++b) {
    if (!r.next(tok)) throw ParseError("unexpected end of input in BOUNDARY", r.line());
    if (tok.size() != 4) throw ParseError("boundary line needs 'lo hi kind part'", r.line());
    const std::size_t lo = to_index(tok[0], r.line()), hi = to_index(tok[1], r.line());
    if (lo >= nv || hi >= nv) throw ParseError("vertex index out of range", r.line());
    BoundaryTag tag;
    if (tok[2] == "dirichlet") tag.kind = BoundaryKind::Dirichlet;
    else if (tok[2] == "neumann") tag.kind = BoundaryKind::Neumann;
    else if (tok[2] == "robin") tag.kind = BoundaryKind::Robin;
    else throw ParseError("unknown boundary kind '" + tok[2] + "'", r.line());
    tag.part = to_int(tok[3], r.line());
    tags[edge_key(lo, hi)] = tag;
  }
  if (r.next(tok)) throw ParseError("trailing content after BOUNDARY section", r.line());

  try {
    return Mesh(std::move(verts), std::move(tris), std::move(regions), tags);
  } catch (const ContractError& e) {
    throw ParseError(e.what(), r.line());
  }
}

Mesh parse_mesh(const std::string& text) {
  std::istringstream in(text);
  return read_mesh(in);
}

Mesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open mesh file '" + path + "'");
  return read_mesh(in);
}

std::string render_svg(const Mesh& mesh) {
  constexpr double canvas = 1000.0;
  constexpr double margin = 20.0;
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  if (mesh.num_vertices() > 0) {
    xmin = xmax = mesh.vertex(0).x;
    ymin = ymax = mesh.vertex(0).y;
    for (const Vec2& v : mesh.vertices()) {
      xmin = std::min(xmin, v.x);
      xmax = std::max(xmax, v.x);
      ymin = std::min(ymin, v.y);
      ymax = std::max(ymax, v.y);
    }
  }
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-300});
  const double s = (canvas - 2.0 * margin) / span;
  auto px = [&](Vec2 v) { return Vec2{margin + s * (v.x - xmin), canvas - margin - s * (v.y - ymin)}; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" viewBox=\"0 0 1000 1000\">\n";
  out << "<rect width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
  out << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  char buf[160];
  for (const auto& [a, b] : mesh.edges()) {
    const Vec2 p = px(mesh.vertex(a)), q = px(mesh.vertex(b));
    std::snprintf(buf, sizeof buf, "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\"/>\n", p.x, p.y, q.x, q.y);
    out << buf;
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace eqfem
