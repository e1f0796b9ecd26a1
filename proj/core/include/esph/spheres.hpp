#pragma once

// Circumspheres, strict empty/full classification and the census of
// neighboring spheres: one per (d-2)-face of the polytope boundary, through
// the d+1 vertices of the two boundary facets sharing it.

#include <span>
#include <utility>
#include <vector>

#include "esph/delaunay.hpp"

namespace esph {

struct Sphere {
  VectorD center;
  Scalar radius_sq;
};

// Throws DegenerateSimplex for affinely dependent input.
Sphere circumsphere(std::span<const VectorD> vertices);

enum class SphereClass { Empty, Full, Neither };

const char* to_string(SphereClass c);

// Empty: every other point strictly outside. Full: every other point strictly
// inside. Any other point exactly on the sphere is a GenericityViolation.
SphereClass classify_sphere(const Sphere& s, std::span<const int> defining_ids,
                            std::span<const VectorD> points);

// Same classification of the circumsphere of `defining_ids` through lifted
// determinants, without forming the sphere.
SphereClass classify_sphere(const HomogeneousLift& lift, std::span<const int> defining_ids,
                            std::span<const VectorD> points);

struct RidgeSphere {
  IdTuple ridge;                          // (d-2)-face, d-1 vertex ids
  std::pair<IdTuple, IdTuple> facets;     // the two boundary facets
  IdTuple vertices;                       // their union, d+1 ids
  Sphere sphere;
  SphereClass cls = SphereClass::Neither;
};

struct RidgeSphereCensus {
  std::vector<RidgeSphere> records;  // ordered by ridge
  int empty_count = 0;
  int full_count = 0;
  int neither_count = 0;
};

RidgeSphereCensus neighboring_sphere_census(std::span<const VectorD> points, int d,
                                            const Triangulation& dt, const Triangulation& udt);

}  // namespace esph
