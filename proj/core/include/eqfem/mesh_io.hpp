#pragma once

#include <iosfwd>
#include <string>

#include "eqfem/mesh.hpp"

namespace eqfem {

/// Plain-text mesh format, whitespace separated, '#' starts a comment line:
///
///   VERTICES n        followed by n lines "x y"
///   TRIANGLES t       followed by t lines "a b c region" (0-based, counter-clockwise)
///   BOUNDARY b        followed by b lines "lo hi kind part", kind in {dirichlet, neumann, robin}
///
/// Red-green refinement state is not stored.
void write_mesh(std::ostream& out, const Mesh& mesh);
std::string mesh_to_string(const Mesh& mesh);

/// Throws ParseError carrying the offending line number.
Mesh read_mesh(std::istream& in);
Mesh parse_mesh(const std::string& text);
Mesh load_mesh(const std::string& path);

/// Wireframe on a fixed 1000 x 1000 canvas, one <line> per edge, line width 1.
std::string render_svg(const Mesh& mesh);

}  // namespace eqfem
