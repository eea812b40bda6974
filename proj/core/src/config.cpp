#include "eqfem/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "eqfem/error.hpp"

namespace eqfem {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

struct Entry {
  std::string value;
  std::size_t line = 0;
};

std::vector<double> numbers(const Entry& e, std::size_t count_min, std::size_t count_max) {
  std::istringstream in(e.value);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || !std::isfinite(v)) throw ParseError("expected a number, got '" + tok + "'", e.line);
    out.push_back(v);
  }
  if (out.size() < count_min || out.size() > count_max)
    throw ParseError("wrong number of values in '" + e.value + "'", e.line);
  return out;
}

BoundaryKind parse_kind(const Entry& e) {
  if (e.value == "dirichlet") return BoundaryKind::Dirichlet;
  if (e.value == "neumann") return BoundaryKind::Neumann;
  if (e.value == "robin") return BoundaryKind::Robin;
  throw ParseError("unknown boundary kind '" + e.value + "'", e.line);
}

// key "name" or "name.<region>"
struct Key {
  std::string name;
  std::optional<int> region;
};

Key split_key(const std::string& key, std::size_t line) {
  const auto dot = key.find('.');
  if (dot == std::string::npos) return {key, std::nullopt};
  const std::string r = key.substr(dot + 1);
  if (r.empty() || !std::all_of(r.begin(), r.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError("bad region suffix in '" + key + "'", line);
  return {key.substr(0, dot), std::stoi(r)};
}

template <class T>
struct Piecewise {
  std::optional<T> base;
  std::map<int, T> overrides;
  T at(int r, const T& fallback) const {
    if (auto it = overrides.find(r); it != overrides.end()) return it->second;
    return base ? *base : fallback;
  }
};

}  // namespace

ManufacturedCase parse_problem(std::istream& in) {
  using Section = std::map<std::string, Entry>;
  std::map<std::string, Section> sections;
  const std::vector<std::string> known = {"domain", "regions", "coefficients", "source", "boundary"};
  std::string current;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError("malformed section header '" + s + "'", line);
      current = trim(s.substr(1, s.size() - 2));
      if (std::find(known.begin(), known.end(), current) == known.end())
        throw ParseError("unknown section '" + current + "'", line);
      sections[current];
      continue;
    }
    if (current.empty()) throw ParseError("entry outside of a section", line);
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line);
    const std::string key = trim(s.substr(0, eq));
    if (key.empty()) throw ParseError("empty key", line);
    if (!sections[current].emplace(key, Entry{trim(s.substr(eq + 1)), line}).second)
      throw ParseError("duplicate key '" + key + "'", line);
  }

  // [domain]
  std::string shape = "square";
  std::size_t n = 10;
  Diagonal diagonal = Diagonal::Main;
  for (const auto& [key, e] : sections["domain"]) {
    if (key == "shape") {
      if (e.value != "square" && e.value != "lshape") throw ParseError("unknown shape '" + e.value + "'", e.line);
      shape = e.value;
    } else if (key == "n") {
      const double v = numbers(e, 1, 1)[0];
      if (v < 1 || v > 4096 || v != std::floor(v)) throw ParseError("n must be an integer in 1..4096", e.line);
      n = static_cast<std::size_t>(v);
    } else if (key == "diagonal") {
      if (e.value == "main") diagonal = Diagonal::Main;
      else if (e.value == "anti") diagonal = Diagonal::Anti;
      else throw ParseError("unknown diagonal '" + e.value + "'", e.line);
    } else {
      throw ParseError("unknown key '" + key + "' in [domain]", e.line);
    }
  }
  if (shape == "lshape" && n % 2 != 0) throw ParseError("lshape needs an even n", sections["domain"]["n"].line);

  // [regions]
  std::vector<double> xb, yb;
  for (const auto& [key, e] : sections["regions"]) {
    std::vector<double>* target = key == "x_breaks" ? &xb : key == "y_breaks" ? &yb : nullptr;
    if (!target) throw ParseError("unknown key '" + key + "' in [regions]", e.line);
    *target = numbers(e, 0, 64);
    if (!std::is_sorted(target->begin(), target->end())) throw ParseError("breaks must be ascending", e.line);
  }
  const int nxr = static_cast<int>(xb.size()) + 1;
  const RegionFn region = [xb, yb, nxr](Vec2 x) {
    const int ix = static_cast<int>(std::upper_bound(xb.begin(), xb.end(), x.x) - xb.begin());
    const int iy = static_cast<int>(std::upper_bound(yb.begin(), yb.end(), x.y) - yb.begin());
    return ix + nxr * iy;
  };
  const int n_regions = nxr * (static_cast<int>(yb.size()) + 1);

  // [coefficients]
  std::string kind = "rd";
  Piecewise<Mat2> alpha, eps;
  Piecewise<double> rho, mu;
  double gamma = 1.0;
  auto check_region = [&](const Key& k, std::size_t l) {
    if (k.region && *k.region >= n_regions) throw ParseError("region " + std::to_string(*k.region) + " does not exist", l);
  };
  auto tensor = [](const Entry& e) {
    const auto v = numbers(e, 4, 4);
    const Mat2 m{v[0], v[1], v[2], v[3]};
    if (!m.is_spd()) throw ParseError("tensor is not symmetric positive definite", e.line);
    return m;
  };
  auto positive = [](const Entry& e) {
    const double v = numbers(e, 1, 1)[0];
    if (!(v > 0.0)) throw ParseError("value must be positive", e.line);
    return v;
  };
  for (const auto& [key, e] : sections["coefficients"]) {
    if (key == "kind") {
      if (e.value != "rd" && e.value != "ec") throw ParseError("kind must be rd or ec", e.line);
      kind = e.value;
      continue;
    }
    if (key == "gamma") {
      gamma = positive(e);
      continue;
    }
    const Key k = split_key(key, e.line);
    check_region(k, e.line);
    if (k.name == "alpha" || k.name == "eps") {
      auto& pw = k.name == "alpha" ? alpha : eps;
      (k.region ? pw.overrides[*k.region] : pw.base.emplace()) = tensor(e);
    } else if (k.name == "rho" || k.name == "mu") {
      auto& pw = k.name == "rho" ? rho : mu;
      (k.region ? pw.overrides[*k.region] : pw.base.emplace()) = positive(e);
    } else {
      throw ParseError("unknown key '" + key + "' in [coefficients]", e.line);
    }
  }
  const bool rd = kind == "rd";
  for (const auto& [key, e] : sections["coefficients"]) {
    const std::string name = split_key(key, e.line).name;
    if ((rd && (name == "eps" || name == "mu")) || (!rd && (name == "alpha" || name == "rho" || name == "gamma")))
      throw ParseError("'" + key + "' does not apply to kind " + kind, e.line);
  }

  // [source]
  Piecewise<double> f;
  Piecewise<Vec2> j;
  for (const auto& [key, e] : sections["source"]) {
    const Key k = split_key(key, e.line);
    check_region(k, e.line);
    if (k.name == "f" && rd) {
      (k.region ? f.overrides[*k.region] : f.base.emplace()) = numbers(e, 1, 1)[0];
    } else if (k.name == "j" && !rd) {
      const auto v = numbers(e, 2, 2);
      (k.region ? j.overrides[*k.region] : j.base.emplace()) = Vec2{v[0], v[1]};
    } else {
      throw ParseError("unknown key '" + key + "' in [source]", e.line);
    }
  }

  // [boundary]
  std::map<std::string, BoundaryKind> sides;
  std::optional<BoundaryKind> all;
  for (const auto& [key, e] : sections["boundary"]) {
    if (key == "all") all = parse_kind(e);
    else if (key == "bottom" || key == "right" || key == "top" || key == "left" || key == "inner")
      sides[key] = parse_kind(e);
    else
      throw ParseError("unknown key '" + key + "' in [boundary]", e.line);
    if (!rd && parse_kind(e) == BoundaryKind::Robin)
      throw ParseError("Robin conditions need kind = rd", e.line);
  }
  const BoundaryKind fallback = all.value_or(BoundaryKind::Dirichlet);
  const BoundaryFn boundary = [sides, fallback](Vec2 m) {
    const double tol = 1e-12;
    int part = 4;
    std::string name = "inner";
    if (std::abs(m.y) < tol) part = 0, name = "bottom";
    else if (std::abs(m.x - 1.0) < tol) part = 1, name = "right";
    else if (std::abs(m.y - 1.0) < tol) part = 2, name = "top";
    else if (std::abs(m.x) < tol) part = 3, name = "left";
    const auto it = sides.find(name);
    return BoundaryTag{it != sides.end() ? it->second : fallback, part};
  };

  std::function<Mesh()> initial;
  if (shape == "square")
    initial = [=] { return rect_structured(n, n, diagonal, region, boundary); };
  else
    initial = [=] { return lshape_structured(n, diagonal, region, boundary); };

  if (rd) {
    RdCase c;
    c.id = "config";
    std::map<int, Mat2> a;
    std::map<int, double> r;
    for (int i = 0; i < n_regions; ++i) {
      a[i] = alpha.at(i, Mat2::identity());
      r[i] = rho.at(i, 1.0);
    }
    c.problem.alpha = PiecewiseTensor(a);
    c.problem.rho = PiecewiseScalar(r);
    c.problem.gamma = gamma;
    c.problem.f = [f](Vec2, int reg) { return f.at(reg, 0.0); };
    c.region = region;
    c.boundary = boundary;
    c.initial_mesh = initial;
    return c;
  }
  EcCase c;
  c.id = "config";
  std::map<int, Mat2> e;
  std::map<int, double> m;
  for (int i = 0; i < n_regions; ++i) {
    e[i] = eps.at(i, Mat2::identity());
    m[i] = mu.at(i, 1.0);
  }
  c.problem.eps = PiecewiseTensor(e);
  c.problem.mu = PiecewiseScalar(m);
  c.problem.j = [j](Vec2, int reg) { return j.at(reg, Vec2{}); };
  c.region = region;
  c.boundary = boundary;
  c.initial_mesh = initial;
  return c;
}

ManufacturedCase load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return parse_problem(in);
}

}  // namespace eqfem
