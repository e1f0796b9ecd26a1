#pragma once

// Plain-text point files:
//
//   # optional comments
//   d n
//   x_1 ... x_d      (n lines; each coordinate "p/q" or a decimal literal)

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "esph/exactnum.hpp"

namespace esph {

struct PointSet {
  int dim = 0;
  std::vector<VectorD> points;
};

// Throws ParseError carrying the offending line number.
PointSet parse_points(std::istream& in);
PointSet read_points(const std::filesystem::path& path);

// Coordinates are written exactly as "p/q" (or "p").
void write_points(std::ostream& out, std::span<const VectorD> points, int dim);

}  // namespace esph
