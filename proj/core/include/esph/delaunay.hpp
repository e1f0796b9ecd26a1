#pragma once

// Delaunay and upper Delaunay triangulations of the vertex set of a convex
// polytope, obtained by lifting to the paraboloid x_{d+1} = |x|^2 and
// projecting the lower / upper facets of the lifted hull.

#include <cstdint>
#include <span>
#include <vector>

#include "esph/hull.hpp"

namespace esph {

enum class TriangulationKind { Delaunay, UpperDelaunay };

const char* to_string(TriangulationKind k);

struct Triangulation {
  TriangulationKind kind = TriangulationKind::Delaunay;
  int dim = 0;
  std::vector<VectorD> points;
  std::vector<IdTuple> simplices;  // sorted (d+1)-tuples of point indices
  std::vector<int> source_facets;  // lifted-hull facet id of each simplex
};

VectorD lift(const VectorD& p);

struct FacetSplit {
  std::vector<int> lower;  // outward normal has negative last coordinate
  std::vector<int> upper;
};

// Throws GenericityViolation on a vertical facet.
FacetSplit split_facets(const HullComplex& lifted);

struct DelaunayPair {
  Triangulation dt;
  Triangulation udt;
  HullComplex lifted;
  FacetSplit split;
};

// Requires generic input in convex position; propagates the hull's
// GenericityViolation / NotInConvexPosition otherwise.
DelaunayPair delaunay_triangulations(std::span<const VectorD> points, int d,
                                     std::uint64_t seed = kDefaultHullSeed);

struct GenericityReport {
  bool is_generic = false;
  std::vector<IdTuple> violations;  // cospherical (d+2)-tuples
  int n = 0;
  int d = 0;
  bool is_simplex = false;
  bool full_dimensional = false;
  bool in_convex_position = false;
  bool simplicial = false;
  std::vector<std::string> notes;
};

inline constexpr int kExhaustiveGenericityLimit = 25;

// Exhaustive (d+2)-subset test for n <= limit; above it only the incidence
// errors raised while building the hulls are reported.
GenericityReport check_generic(std::span<const VectorD> points, int d,
                               int exhaustive_limit = kExhaustiveGenericityLimit);

// True iff the d+2 points lie on a common sphere (or hyperplane), i.e. their
// lifts are affinely dependent.
bool cospherical(std::span<const VectorD> points);

// Integer rows D^2 (p, |p|^2, 1) for points p = P / D, D the common
// denominator of p. A determinant of d+2 of these rows decides cospherical
// and in-sphere questions without rational arithmetic.
class HomogeneousLift {
 public:
  HomogeneousLift(std::span<const VectorD> points, int d);

  int dim() const noexcept { return d_; }
  // Sign of the determinant of rows `ids` (d+2 of them) in the given order.
  Sign sign(std::span<const int> ids) const;
  bool cospherical(std::span<const int> ids) const { return sign(ids) == Sign::Zero; }
  // Agrees with in_sphere() on the same points; `orientation` is
  // orient() of the simplex and must be nonzero.
  Sign in_sphere(std::span<const int> simplex, Sign orientation, int query) const;

 private:
  int d_;
  std::vector<std::vector<BigInt>> rows_;
};

Scalar triangulation_volume(const Triangulation& t);

}  // namespace esph
