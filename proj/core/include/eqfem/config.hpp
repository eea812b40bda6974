#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "eqfem/problems.hpp"

namespace eqfem {

/// Problem file grammar ('#' starts a comment, blank lines ignored):
///
///   [domain]        shape = square | lshape, n = <cells per side>, diagonal = main | anti
///   [regions]       x_breaks = <ascending values>, y_breaks = <ascending values>
///                   (region = ix + (#x_breaks + 1) * iy from the centroid)
///   [coefficients]  kind = rd | ec; rd: alpha, rho, gamma; ec: eps, mu.
///                   Tensors are "a11 a12 a21 a22"; a ".<region>" suffix overrides one region.
///   [source]        f = <value> (rd) or j = <x> <y> (ec), with optional ".<region>" overrides
///   [boundary]      bottom | right | top | left | inner | all = dirichlet | neumann | robin
///
/// Sources are piecewise constant. Unknown sections or keys raise ParseError.
ManufacturedCase parse_problem(std::istream& in);
ManufacturedCase load_problem(const std::filesystem::path& path);

}  // namespace eqfem
