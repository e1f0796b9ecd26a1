#pragma once

#include <vector>

#include "esph/delaunay.hpp"

namespace esph {

// (d-1)-faces incident to exactly one simplex, sorted. Throws
// MalformedTriangulation if some face is shared by three or more simplices.
std::vector<IdTuple> boundary_facets(const Triangulation& t);

// A simplex is an ear when at least two of its (d-1)-faces lie on the
// boundary of the polytope.
struct EarSet {
  TriangulationKind kind = TriangulationKind::Delaunay;
  std::vector<int> ear_simplex_ids;        // ascending
  std::vector<int> boundary_facet_count;   // per simplex

  std::size_t size() const noexcept { return ear_simplex_ids.size(); }
  bool contains(int simplex) const;
};

EarSet detect_ears(const Triangulation& t);

}  // namespace esph
