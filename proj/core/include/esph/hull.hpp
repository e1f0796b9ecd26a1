#pragma once

// Exact incremental convex hull in arbitrary dimension for point sets in
// strictly convex, general position. Every facet is a simplex.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "esph/exactnum.hpp"

namespace esph {

using IdTuple = std::vector<int>;

// Hyperplane normal . x = offset; every hull point satisfies normal . x <= offset.
struct Facet {
  IdTuple vertex_ids;  // sorted, size == ambient dimension
  VectorD normal;      // outward, primitive integer vector
  Scalar offset;

  // Sign of normal . p - offset: Positive means p is beyond the facet.
  Sign side(const VectorD& p) const;
};

struct HullComplex {
  int ambient_dim = 0;
  std::vector<VectorD> points;
  std::vector<Facet> facets;
  // ridge (sorted, size ambient_dim - 1) -> the two facets sharing it
  std::map<IdTuple, std::pair<int, int>> ridge_adjacency;
};

inline constexpr std::uint64_t kDefaultHullSeed = 0x5eed'c0de'2024ULL;

// Randomized incremental beneath-beyond with conflict lists.
//
// Throws NotInConvexPosition when a point is strictly inside the hull of the
// others, GenericityViolation when a point lies on a facet hyperplane it is
// not a vertex of (or a facet would not be a simplex), and InputError for
// too few points or affinely degenerate input.
HullComplex convex_hull(std::span<const VectorD> points, int ambient_dim,
                        std::uint64_t seed = kDefaultHullSeed);

struct Diagnostics {
  bool ok = true;
  std::vector<std::string> messages;

  explicit operator bool() const noexcept { return ok; }
  void fail(std::string msg) {
    ok = false;
    messages.push_back(std::move(msg));
  }
};

// Checks simplicial facets, strict outwardness against every non-vertex
// point, and that each ridge is listed once with exactly its two facets.
Diagnostics validate_complex(const HullComplex& h);

// Exact volume of the hull, summed over cones from the centroid.
Scalar hull_volume(const HullComplex& h);

// Centroid of all points (interior for a full-dimensional hull).
VectorD centroid(std::span<const VectorD> points);

// All size-(|t|-1) subsets of a sorted tuple, in order of the omitted index.
std::vector<IdTuple> faces_of(const IdTuple& t);

}  // namespace esph
