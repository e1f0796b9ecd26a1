#pragma once

// Slow, independent reference computations used to check the library.
// Nothing here calls the hull, Delaunay, census or LP code under test.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "esph/exactnum.hpp"
#include "esph/hull.hpp"
#include "esph/spheres.hpp"

namespace esph::oracle {

// Every k-subset of {0..n-1} in lexicographic order.
std::vector<IdTuple> subsets(int n, int k);

// Facets of the hull as the d-subsets whose affine hull has every other point
// strictly on one side.
std::set<IdTuple> hull_facets(std::span<const VectorD> points, int d);

// (d+1)-subsets whose circumsphere has every other point strictly outside
// (Delaunay) or strictly inside (upper Delaunay).
std::set<IdTuple> delaunay_simplices(std::span<const VectorD> points, int d, bool upper);

// Strict feasibility of { x : a_i . x < b_i } by Fourier-Motzkin elimination.
struct StrictRow {
  std::vector<Scalar> a;
  Scalar b;
};
bool strictly_feasible(std::vector<StrictRow> rows, int vars);

// Affine function x -> c . x + e whose graph passes through the lifted
// vertices of the simplex.
struct Affine {
  std::vector<Scalar> c;
  Scalar e;
  Scalar at(const VectorD& x) const;
};
Affine lifted_plane(std::span<const VectorD> points, const IdTuple& simplex);

// Delaunay (or upper Delaunay) simplices whose lifted plane lies strictly
// below (above) every other lifted facet plane somewhere.
std::set<IdTuple> bm_ears(std::span<const VectorD> points, int d, bool upper);

// Classification of the neighboring sphere of every (d-2)-face of the
// boundary, keyed by that face.
std::map<IdTuple, SphereClass> neighboring_spheres(std::span<const VectorD> points, int d);

// Simplices with at least two boundary (d-1)-faces.
std::set<IdTuple> ears(const std::set<IdTuple>& simplices, int d);

// Random rationals p/q with |p| <= num_bound and 1 <= q <= den_bound.
Scalar random_scalar(std::mt19937_64& rng, std::int64_t num_bound, std::int64_t den_bound);
VectorD random_point(std::mt19937_64& rng, int d, std::int64_t num_bound, std::int64_t den_bound);

}  // namespace esph::oracle
