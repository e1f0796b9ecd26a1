#include <gtest/gtest.h>

#include <set>

#include "esph/delaunay.hpp"
#include "esph/errors.hpp"
#include "esph/harness.hpp"
#include "oracles.hpp"

namespace esph {
namespace {

std::set<IdTuple> simplex_set(const Triangulation& t) { return {t.simplices.begin(), t.simplices.end()}; }

std::vector<VectorD> polytope(int d, int n, std::uint64_t seed, int trial = 0) {
  TrialConfig cfg;
  cfg.d = d;
  cfg.n_min = cfg.n_max = n;
  cfg.seed = seed;
  return gen_polytope(cfg, trial);
}

TEST(Lift, AppendsSquaredNorm) {
  EXPECT_EQ(lift(VectorD{1, 2}), (VectorD{1, 2, 5}));
  EXPECT_EQ(lift(VectorD{0, 0}), (VectorD{0, 0, 0}));
  EXPECT_EQ(lift(VectorD{-2, 1, 3}), (VectorD{-2, 1, 3, 14}));
}

TEST(SplitFacets, PerturbedSquare) {
  const std::vector<VectorD> quad = {{0, 0}, {3, 0}, {3, 3}, {0, 4}};
  std::vector<VectorD> lifted;
  for (const auto& p : quad) lifted.push_back(lift(p));
  const auto split = split_facets(convex_hull(lifted, 3));
  EXPECT_EQ(split.lower.size(), 2u);
  EXPECT_EQ(split.upper.size(), 2u);
}

TEST(SplitFacets, TrianglePlusPointInsideCircumcircle) {
  // (1, 1/2) is inside the circumcircle of the triangle but outside the triangle.
  const std::vector<VectorD> pts = {{0, 0}, {2, 0}, {0, 2}, {Scalar(3, 2), Scalar(3, 2)}};
  std::vector<VectorD> lifted;
  for (const auto& p : pts) lifted.push_back(lift(p));
  const auto h = convex_hull(lifted, 3);
  const auto split = split_facets(h);
  EXPECT_EQ(split.lower.size() + split.upper.size(), h.facets.size());
}

TEST(SplitFacets, CocircularSquareIsDegenerate) {
  const std::vector<VectorD> sq = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  std::vector<VectorD> lifted;
  for (const auto& p : sq) lifted.push_back(lift(p));
  EXPECT_THROW(split_facets(convex_hull(lifted, 3)), Error);
  EXPECT_THROW(delaunay_triangulations(sq, 2), GenericityViolation);
}

TEST(Delaunay, QuadrilateralUsesOppositeDiagonals) {
  const std::vector<VectorD> quad = {{0, 0}, {3, 0}, {3, 3}, {0, 4}};
  const auto pair = delaunay_triangulations(quad, 2);
  ASSERT_EQ(pair.dt.simplices.size(), 2u);
  ASSERT_EQ(pair.udt.simplices.size(), 2u);
  auto diagonal = [](const Triangulation& t) {
    IdTuple shared;
    std::set_intersection(t.simplices[0].begin(), t.simplices[0].end(), t.simplices[1].begin(),
                          t.simplices[1].end(), std::back_inserter(shared));
    return shared;
  };
  const auto dd = diagonal(pair.dt);
  const auto ud = diagonal(pair.udt);
  EXPECT_EQ(dd.size(), 2u);
  EXPECT_EQ(ud.size(), 2u);
  EXPECT_NE(dd, ud);
}

TEST(Delaunay, PolygonHasNMinusTwoTriangles) {
  for (int n = 4; n <= 20; ++n) {
    const auto pair = delaunay_triangulations(polytope(2, n, 77), 2);
    EXPECT_EQ(static_cast<int>(pair.dt.simplices.size()), n - 2);
    EXPECT_EQ(static_cast<int>(pair.udt.simplices.size()), n - 2);
  }
}

TEST(Delaunay, MatchesBruteForce) {
  for (int t = 0; t < 20; ++t) {
    const int n = 4 + t % 9;
    const auto pts = polytope(2, n, 12, t);
    const auto pair = delaunay_triangulations(pts, 2);
    EXPECT_EQ(simplex_set(pair.dt), oracle::delaunay_simplices(pts, 2, false));
    EXPECT_EQ(simplex_set(pair.udt), oracle::delaunay_simplices(pts, 2, true));
  }
  for (int t = 0; t < 8; ++t) {
    const int n = 5 + t % 5;
    const auto pts = polytope(3, n, 13, t);
    const auto pair = delaunay_triangulations(pts, 3);
    EXPECT_EQ(simplex_set(pair.dt), oracle::delaunay_simplices(pts, 3, false));
    EXPECT_EQ(simplex_set(pair.udt), oracle::delaunay_simplices(pts, 3, true));
  }
}

TEST(Delaunay, EmptyAndFullCircumspheres) {
  for (int d = 2; d <= 4; ++d) {
    const auto pts = polytope(d, d + 6, 21);
    const auto pair = delaunay_triangulations(pts, d);
    for (const auto* t : {&pair.dt, &pair.udt}) {
      const Sign want = t == &pair.dt ? Sign::Negative : Sign::Positive;
      for (const auto& s : t->simplices) {
        std::vector<VectorD> verts;
        for (int v : s) verts.push_back(pts[v]);
        for (int q = 0; q < static_cast<int>(pts.size()); ++q) {
          if (std::find(s.begin(), s.end(), q) == s.end()) EXPECT_EQ(in_sphere(verts, pts[q]), want);
        }
      }
    }
    EXPECT_EQ(pair.dt.simplices.size() + pair.udt.simplices.size(), pair.lifted.facets.size());
  }
}

TEST(Delaunay, VolumesPartitionTheHull) {
  for (int d = 2; d <= 4; ++d) {
    for (int t = 0; t < 4; ++t) {
      const auto pts = polytope(d, d + 3 + 2 * t, 34, t);
      const auto pair = delaunay_triangulations(pts, d);
      const Scalar volume = hull_volume(convex_hull(pts, d));
      EXPECT_EQ(triangulation_volume(pair.dt), volume);
      EXPECT_EQ(triangulation_volume(pair.udt), volume);
    }
  }
}

TEST(CheckGeneric, UnitSquareIsCocircular) {
  const std::vector<VectorD> sq = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const auto r = check_generic(sq, 2);
  EXPECT_FALSE(r.is_generic);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0], (IdTuple{0, 1, 2, 3}));
}

TEST(CheckGeneric, TriangleIsASimplex) {
  const std::vector<VectorD> tri = {{0, 0}, {1, 0}, {0, 1}};
  const auto r = check_generic(tri, 2);
  EXPECT_FALSE(r.is_generic);
  EXPECT_TRUE(r.is_simplex);
}

TEST(CheckGeneric, PerturbedQuadrilateralIsGeneric) {
  const std::vector<VectorD> quad = {{0, 0}, {3, 0}, {3, 3}, {0, 4}};
  EXPECT_TRUE(check_generic(quad, 2).is_generic);
}

TEST(CheckGeneric, InteriorPointAndWrongDimension) {
  const std::vector<VectorD> pts = {{0, 0}, {4, 0}, {4, 5}, {0, 3}, {1, 1}};
  const auto r = check_generic(pts, 2);
  EXPECT_FALSE(r.is_generic);
  EXPECT_FALSE(r.in_convex_position);
  EXPECT_FALSE(check_generic(pts, 3).is_generic);
}

TEST(CheckGeneric, LargeInputUsesHullIncidences) {
  const auto pts = polytope(2, 30, 5);
  const auto r = check_generic(pts, 2);
  EXPECT_TRUE(r.is_generic);
  EXPECT_TRUE(r.violations.empty());
}

TEST(Cospherical, DetectsFifthPointOnSphere) {
  const std::vector<VectorD> five = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, 0, 0}, {0, Scalar(3, 5), Scalar(4, 5)}};
  EXPECT_TRUE(cospherical(five));
  auto moved = five;
  moved[4][2] = Scalar(81, 100);
  EXPECT_FALSE(cospherical(moved));
}

}  // namespace
}  // namespace esph
