#pragma once

// Planar results for generic convex polygons given in boundary order: the
// census of empty / full circles by type, and the extrema of the discrete
// curvature radii R_i = circumradius(A_{i-1}, A_i, A_{i+1}).

#include <span>
#include <vector>

#include "esph/exactnum.hpp"

namespace esph {

// Circles of the Delaunay (minus: empty) and upper Delaunay (plus: full)
// triangles, split by how many polygon edges the triangle carries:
// two -> neighboring (s), none -> disjoint (t), one -> intermediate (u).
struct Census2D {
  int n = 0;
  int s_minus = 0, t_minus = 0, u_minus = 0;
  int s_plus = 0, t_plus = 0, u_plus = 0;

  // s - t = 2, s + t + u = n - 2 and 2s + u = n on both sides.
  bool identities_hold() const;
};

// Throws InputError unless the vertices form a strictly convex polygon in
// boundary order (either orientation); genericity errors propagate.
Census2D census2d(std::span<const VectorD> polygon);

struct RadiiReport {
  std::vector<Scalar> radii_sq;  // R_i^2, cyclic
  bool condition_holds = false;  // every circumcenter strictly inside its angle
  // R_i not exceeding (resp. not less than) both cyclic neighbours.
  int local_min_count = 0;
  int local_max_count = 0;
};

RadiiReport curvature_radii(std::span<const VectorD> polygon);

// Throws InputError unless the polygon is strictly convex and in boundary
// order. Returns the orientation (Positive = counterclockwise).
Sign require_convex_polygon(std::span<const VectorD> polygon);

}  // namespace esph
