#include "esph/spheres.hpp"

#include <algorithm>
#include <map>

#include "esph/ears.hpp"
#include "esph/errors.hpp"

namespace esph {

const char* to_string(SphereClass c) {
  switch (c) {
    case SphereClass::Empty: return "Empty";
    case SphereClass::Full: return "Full";
    case SphereClass::Neither: return "Neither";
  }
  return "?";
}

Sphere circumsphere(std::span<const VectorD> vertices) {
  if (vertices.empty()) throw InputError("circumsphere of no points");
  const std::size_t d = vertices.size() - 1;
  for (const auto& v : vertices) {
    if (v.dim() != d) throw InputError("circumsphere needs d+1 points in dimension d");
  }
  // 2 (p_i - p_0) . c = |p_i|^2 - |p_0|^2
  std::vector<VectorD> a;
  VectorD b(d);
  const Scalar p0sq = squared_norm(vertices[0]);
  for (std::size_t i = 1; i <= d; ++i) {
    a.push_back((vertices[i] - vertices[0]) * Scalar(2));
    b[i - 1] = squared_norm(vertices[i]) - p0sq;
  }
  auto center = solve_linear(std::move(a), std::move(b));
  if (!center) throw DegenerateSimplex("circumsphere: affinely dependent vertices");
  Sphere s;
  s.radius_sq = squared_norm(vertices[0] - *center);
  s.center = std::move(*center);
  return s;
}

SphereClass classify_sphere(const Sphere& s, std::span<const int> defining_ids, std::span<const VectorD> points) {
  bool any_inside = false;
  bool any_outside = false;
  for (int p = 0; p < static_cast<int>(points.size()); ++p) {
    if (std::find(defining_ids.begin(), defining_ids.end(), p) != defining_ids.end()) continue;
    const Scalar dist = squared_norm(points[p] - s.center);
    if (dist == s.radius_sq) {
      IdTuple ids(defining_ids.begin(), defining_ids.end());
      ids.push_back(p);
      std::sort(ids.begin(), ids.end());
      throw GenericityViolation("point " + std::to_string(p) + " lies on a classified sphere", ids);
    }
    (dist < s.radius_sq ? any_inside : any_outside) = true;
  }
  if (!any_inside) return SphereClass::Empty;
  if (!any_outside) return SphereClass::Full;
  return SphereClass::Neither;
}

SphereClass classify_sphere(const HomogeneousLift& lift, std::span<const int> defining_ids,
                            std::span<const VectorD> points) {
  std::vector<VectorD> simplex;
  for (int v : defining_ids) simplex.push_back(points[v]);
  const Sign o = orient(simplex);
  bool any_inside = false;
  bool any_outside = false;
  for (int p = 0; p < static_cast<int>(points.size()); ++p) {
    if (std::find(defining_ids.begin(), defining_ids.end(), p) != defining_ids.end()) continue;
    const Sign s = lift.in_sphere(defining_ids, o, p);
    if (s == Sign::Zero) {
      IdTuple ids(defining_ids.begin(), defining_ids.end());
      ids.push_back(p);
      std::sort(ids.begin(), ids.end());
      throw GenericityViolation("point " + std::to_string(p) + " lies on a classified sphere", ids);
    }
    (s == Sign::Positive ? any_inside : any_outside) = true;
  }
  if (!any_inside) return SphereClass::Empty;
  if (!any_outside) return SphereClass::Full;
  return SphereClass::Neither;
}

RidgeSphereCensus neighboring_sphere_census(std::span<const VectorD> points, int d, const Triangulation& dt,
                                            const Triangulation& udt) {
  const auto boundary = boundary_facets(dt);
  if (boundary != boundary_facets(udt)) {
    throw InternalError("Delaunay and upper Delaunay triangulations disagree on the boundary");
  }

  std::map<IdTuple, std::vector<int>> ridges;
  for (int f = 0; f < static_cast<int>(boundary.size()); ++f) {
    for (auto& r : faces_of(boundary[f])) ridges[std::move(r)].push_back(f);
  }

  const HomogeneousLift lift(points, d);
  RidgeSphereCensus census;
  census.records.reserve(ridges.size());
  std::vector<VectorD> verts;
  for (const auto& [ridge, owners] : ridges) {
    if (owners.size() != 2) {
      throw GenericityViolation("boundary ridge not shared by exactly two facets", ridge);
    }
    RidgeSphere rec;
    rec.ridge = ridge;
    rec.facets = {boundary[owners[0]], boundary[owners[1]]};
    IdTuple all;
    std::set_union(rec.facets.first.begin(), rec.facets.first.end(), rec.facets.second.begin(),
                   rec.facets.second.end(), std::back_inserter(all));
    if (static_cast<int>(all.size()) != d + 1) {
      throw GenericityViolation("neighboring facets do not span d+1 vertices", all);
    }
    verts.clear();
    for (int v : all) verts.push_back(points[v]);
    try {
      rec.sphere = circumsphere(verts);
    } catch (const DegenerateSimplex&) {
      throw GenericityViolation("neighboring facets are affinely dependent", all);
    }
    rec.cls = classify_sphere(lift, all, points);
    rec.vertices = std::move(all);
    switch (rec.cls) {
      case SphereClass::Empty: ++census.empty_count; break;
      case SphereClass::Full: ++census.full_count; break;
      case SphereClass::Neither: ++census.neither_count; break;
    }
    census.records.push_back(std::move(rec));
  }
  return census;
}

}  // namespace esph
