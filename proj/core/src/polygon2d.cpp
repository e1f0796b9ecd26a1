#include "esph/polygon2d.hpp"

#include "esph/delaunay.hpp"
#include "esph/errors.hpp"
#include "esph/spheres.hpp"

namespace esph {

bool Census2D::identities_hold() const {
  return s_minus - t_minus == 2 && s_plus - t_plus == 2 && s_minus + t_minus + u_minus == n - 2 &&
         s_plus + t_plus + u_plus == n - 2 && 2 * s_minus + u_minus == n && 2 * s_plus + u_plus == n;
}

Sign require_convex_polygon(std::span<const VectorD> polygon) {
  const int n = static_cast<int>(polygon.size());
  if (n < 3) throw InputError("a polygon needs at least 3 vertices");
  for (const auto& p : polygon) {
    if (p.dim() != 2) throw InputError("polygon vertices must be 2-dimensional");
  }
  // Every other vertex strictly on the inner side of every edge rules out
  // both reflex turns and multiple windings.
  Sign orientation = Sign::Zero;
  for (int i = 0; i < n; ++i) {
    const VectorD& a = polygon[i];
    const VectorD& b = polygon[(i + 1) % n];
    for (int j = 0; j < n; ++j) {
      if (j == i || j == (i + 1) % n) continue;
      const VectorD tri[] = {a, b, polygon[j]};
      const Sign s = orient(tri);
      if (s == Sign::Zero) throw InputError("polygon has three collinear vertices");
      if (orientation == Sign::Zero) orientation = s;
      if (s != orientation) throw InputError("vertices are not a convex polygon in boundary order");
    }
  }
  return orientation;
}

namespace {

bool is_polygon_edge(int a, int b, int n) {
  const int gap = (b - a + n) % n;
  return gap == 1 || gap == n - 1;
}

int polygon_edges_of(const IdTuple& tri, int n) {
  return static_cast<int>(is_polygon_edge(tri[0], tri[1], n)) + static_cast<int>(is_polygon_edge(tri[1], tri[2], n)) +
         static_cast<int>(is_polygon_edge(tri[0], tri[2], n));
}

}  // namespace

Census2D census2d(std::span<const VectorD> polygon) {
  require_convex_polygon(polygon);
  const int n = static_cast<int>(polygon.size());
  if (n < 4) throw InputError("the census needs at least 4 vertices");
  const auto pair = delaunay_triangulations(polygon, 2);

  Census2D c;
  c.n = n;
  auto tally = [n](const Triangulation& t, int& s, int& tt, int& u) {
    for (const auto& tri : t.simplices) {
      switch (polygon_edges_of(tri, n)) {
        case 2: ++s; break;
        case 1: ++u; break;
        case 0: ++tt; break;
        default: throw InternalError("triangle with three polygon edges in an n >= 4 polygon");
      }
    }
  };
  tally(pair.dt, c.s_minus, c.t_minus, c.u_minus);
  tally(pair.udt, c.s_plus, c.t_plus, c.u_plus);
  return c;
}

RadiiReport curvature_radii(std::span<const VectorD> polygon) {
  require_convex_polygon(polygon);
  const int n = static_cast<int>(polygon.size());
  RadiiReport r;
  r.condition_holds = true;
  for (int i = 0; i < n; ++i) {
    const VectorD& prev = polygon[(i + n - 1) % n];
    const VectorD& here = polygon[i];
    const VectorD& next = polygon[(i + 1) % n];
    const VectorD tri[] = {prev, here, next};
    const Sphere s = circumsphere(tri);
    r.radii_sq.push_back(s.radius_sq);

    // The centre lies strictly inside the angle iff it is strictly on the
    // same rotational side of both rays as the opposite ray.
    const VectorD to_next[] = {here, next, s.center};
    const VectorD to_prev[] = {here, s.center, prev};
    const VectorD angle[] = {here, next, prev};
    const Sign sa = orient(angle);
    if (orient(to_next) != sa || orient(to_prev) != sa) r.condition_holds = false;
  }
  for (int i = 0; i < n; ++i) {
    const Scalar& here = r.radii_sq[i];
    const Scalar& prev = r.radii_sq[(i + n - 1) % n];
    const Scalar& next = r.radii_sq[(i + 1) % n];
    if (here <= prev && here <= next) ++r.local_min_count;
    if (here >= prev && here >= next) ++r.local_max_count;
  }
  return r;
}

}  // namespace esph
