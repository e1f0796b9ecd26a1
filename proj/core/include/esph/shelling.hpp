#pragma once

// Bruggesser-Mani line shellings of the lower / upper facet complexes of the
// lifted hull, and BM-ear certification.
//
// Each facet hyperplane of the lifted hull is the graph of an affine function
// h_j over the first d coordinates. A lower facet F is a Delaunay BM-ear iff
// some x has h_F(x) < h_j(x) for every other facet j (F carries a facet of the
// lower envelope polyhedron); upper facets mirror this with >. Such an x is a
// witness: the line from an interior point of the hull through (x, h_F(x))
// crosses every facet of F's group before F, which yields a shelling that
// ends at F.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "esph/delaunay.hpp"

namespace esph {

enum class EnvelopeSide { Lower, Upper };

// A point of R^{d+1} on the facet's hyperplane, strictly below (Lower) or
// above (Upper) every other facet hyperplane; nullopt if none exists.
std::optional<VectorD> envelope_witness(const HullComplex& lifted, int facet, EnvelopeSide side);

struct BMEarReport {
  std::vector<int> bmd_facet_ids;   // ascending lifted-hull facet ids
  std::vector<int> bmud_facet_ids;
  std::map<int, VectorD> witnesses;
};

BMEarReport bm_ear_set(const HullComplex& lifted, const FacetSplit& split);

struct ShellingOrder {
  TriangulationKind kind = TriangulationKind::Delaunay;
  std::vector<int> facet_order;
  VectorD line_base;       // interior point of the lifted hull
  VectorD line_direction;  // base + 1 * direction is the witness
};

// Throws NotABMEar when `target` has no envelope witness.
ShellingOrder line_shelling(const HullComplex& lifted, std::span<const int> group, int target);
ShellingOrder line_shelling(const HullComplex& lifted, std::span<const int> group, int target,
                            const VectorD& witness);

struct ShellingCheck {
  bool ok = true;
  int position = -1;  // first offending index into facet_order
  std::string reason;

  explicit operator bool() const noexcept { return ok; }
};

// Exact for simplicial complexes: each simplex must meet the union of its
// predecessors in a nonempty union of its (d-1)-faces, and in a proper
// subset of them except possibly at the last position.
ShellingCheck validate_shelling(const ShellingOrder& order, const Triangulation& t);

// Same check on plain vertex tuples in the given order.
ShellingCheck validate_shelling(std::span<const IdTuple> simplices, int d);

}  // namespace esph
