#include "esph/delaunay.hpp"

#include <algorithm>
#include <numeric>

#include "esph/errors.hpp"

namespace esph {

const char* to_string(TriangulationKind k) {
  return k == TriangulationKind::Delaunay ? "Delaunay" : "UpperDelaunay";
}

VectorD lift(const VectorD& p) {
  VectorD out = p;
  out.push_back(squared_norm(p));
  return out;
}

FacetSplit split_facets(const HullComplex& lifted) {
  FacetSplit split;
  const int last = lifted.ambient_dim - 1;
  for (int f = 0; f < static_cast<int>(lifted.facets.size()); ++f) {
    switch (sign_of(lifted.facets[f].normal[last])) {
      case Sign::Negative: split.lower.push_back(f); break;
      case Sign::Positive: split.upper.push_back(f); break;
      case Sign::Zero:
        throw GenericityViolation("vertical facet in the lifted hull", lifted.facets[f].vertex_ids);
    }
  }
  return split;
}

namespace {

Triangulation project(const HullComplex& lifted, const std::vector<int>& group, TriangulationKind kind,
                      std::span<const VectorD> points, int d) {
  std::vector<int> order(group.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return lifted.facets[group[a]].vertex_ids < lifted.facets[group[b]].vertex_ids;
  });
  Triangulation t;
  t.kind = kind;
  t.dim = d;
  t.points.assign(points.begin(), points.end());
  for (int i : order) {
    t.simplices.push_back(lifted.facets[group[i]].vertex_ids);
    t.source_facets.push_back(group[i]);
  }
  return t;
}

}  // namespace

DelaunayPair delaunay_triangulations(std::span<const VectorD> points, int d, std::uint64_t seed) {
  if (d < 1) throw InputError("dimension must be positive");
  for (const auto& p : points) {
    if (static_cast<int>(p.dim()) != d) throw InputError("point dimension does not match d");
  }
  std::vector<VectorD> lifted;
  lifted.reserve(points.size());
  for (const auto& p : points) lifted.push_back(lift(p));

  DelaunayPair out;
  try {
    out.lifted = convex_hull(lifted, d + 1, seed);
  } catch (const InputError&) {
    // Points spanning R^d whose lifts lie in one hyperplane share a sphere.
    convex_hull(points, d, seed);
    throw GenericityViolation("all points lie on one sphere");
  }
  out.split = split_facets(out.lifted);
  out.dt = project(out.lifted, out.split.lower, TriangulationKind::Delaunay, points, d);
  out.udt = project(out.lifted, out.split.upper, TriangulationKind::UpperDelaunay, points, d);
  return out;
}

HomogeneousLift::HomogeneousLift(std::span<const VectorD> points, int d) : d_(d) {
  rows_.reserve(points.size());
  for (const auto& p : points) {
    if (static_cast<int>(p.dim()) != d) throw InputError("point dimension does not match d");
    const BigInt den = common_denominator(std::span<const Scalar>(p.coords()));
    std::vector<BigInt> row;
    row.reserve(static_cast<std::size_t>(d) + 2);
    BigInt norm = 0;
    for (const auto& x : p.coords()) {
      const BigInt num = BigInt(x * den);
      norm += num * num;
      row.push_back(num * den);
    }
    row.push_back(norm);
    row.push_back(den * den);
    rows_.push_back(std::move(row));
  }
}

Sign HomogeneousLift::sign(std::span<const int> ids) const {
  if (static_cast<int>(ids.size()) != d_ + 2) throw InputError("lifted determinant needs d+2 points");
  std::vector<std::vector<BigInt>> m;
  m.reserve(ids.size());
  for (int i : ids) m.push_back(rows_.at(static_cast<std::size_t>(i)));
  return determinant_sign(std::move(m));
}

Sign HomogeneousLift::in_sphere(std::span<const int> simplex, Sign orientation, int query) const {
  if (orientation == Sign::Zero) throw DegenerateSimplex("in_sphere: degenerate simplex");
  std::vector<int> ids;
  ids.reserve(simplex.size() + 1);
  ids.push_back(query);
  ids.insert(ids.end(), simplex.begin(), simplex.end());
  const Sign s = sign(ids);
  return static_cast<Sign>(-static_cast<int>(s) * static_cast<int>(orientation));
}

bool cospherical(std::span<const VectorD> points) {
  if (points.empty()) throw InputError("cospherical of no points");
  const int d = static_cast<int>(points[0].dim());
  std::vector<int> ids(points.size());
  std::iota(ids.begin(), ids.end(), 0);
  return HomogeneousLift(points, d).cospherical(ids);
}

namespace {

int affine_rank(std::span<const VectorD> points) {
  if (points.empty()) return -1;
  std::vector<VectorD> rows;
  for (std::size_t i = 1; i < points.size(); ++i) rows.push_back(points[i] - points[0]);
  int rank = 0;
  const std::size_t cols = points[0].dim();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
    const VectorD& pr = rows[static_cast<std::size_t>(rank)];
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const Scalar f = rows[r][c] / pr[c];
      rows[r] -= pr * f;
    }
    ++rank;
  }
  return rank;
}

// Calls fn on every k-subset of {0..n-1} (sorted).
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  if (k > n) return;
  IdTuple idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

GenericityReport check_generic(std::span<const VectorD> points, int d, int exhaustive_limit) {
  GenericityReport r;
  r.n = static_cast<int>(points.size());
  r.d = d;
  for (const auto& p : points) {
    if (static_cast<int>(p.dim()) != d) {
      r.notes.push_back("point dimension does not match d");
      return r;
    }
  }
  r.is_simplex = r.n == d + 1;
  r.full_dimensional = affine_rank(points) == d;
  if (r.n < d + 2) r.notes.push_back("fewer than d+2 points");
  if (!r.full_dimensional) r.notes.push_back("points do not affinely span dimension d");

  if (r.full_dimensional && r.n >= d + 1) {
    try {
      convex_hull(points, d);
      r.in_convex_position = true;
      r.simplicial = true;
    } catch (const NotInConvexPosition& e) {
      r.notes.push_back(e.what());
    } catch (const GenericityViolation& e) {
      r.notes.push_back(e.what());
    }
  }

  if (r.n <= exhaustive_limit) {
    const HomogeneousLift lift(points, d);
    for_each_subset(r.n, d + 2, [&](const IdTuple& ids) {
      if (lift.cospherical(ids)) r.violations.push_back(ids);
    });
  } else if (r.full_dimensional && r.in_convex_position && r.simplicial) {
    try {
      delaunay_triangulations(points, d);
    } catch (const GenericityViolation& e) {
      r.violations.push_back(e.ids());
      r.notes.push_back(e.what());
    }
  }

  r.is_generic = r.violations.empty() && !r.is_simplex && r.n >= d + 2 && r.full_dimensional &&
                 r.in_convex_position && r.simplicial;
  return r;
}

Scalar triangulation_volume(const Triangulation& t) {
  Scalar total = 0;
  std::vector<VectorD> simplex;
  for (const auto& s : t.simplices) {
    simplex.clear();
    for (int v : s) simplex.push_back(t.points[v]);
    total += simplex_volume(simplex);
  }
  return total;
}

}  // namespace esph
