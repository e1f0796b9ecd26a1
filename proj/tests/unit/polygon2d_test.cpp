#include <gtest/gtest.h>

#include "esph/errors.hpp"
#include "esph/harness.hpp"
#include "esph/polygon2d.hpp"
#include "esph/pointfile.hpp"
#include "oracles.hpp"

namespace esph {
namespace {

std::vector<VectorD> polygon(int n, std::uint64_t seed, int trial = 0) {
  TrialConfig cfg;
  cfg.d = 2;
  cfg.n_min = cfg.n_max = n;
  cfg.seed = seed;
  return gen_polytope(cfg, trial);
}

// Census by classifying every vertex triple's circle against the others.
Census2D brute_census(const std::vector<VectorD>& poly) {
  const int n = static_cast<int>(poly.size());
  Census2D c;
  c.n = n;
  auto edge = [n](int a, int b) {
    const int g = (b - a + n) % n;
    return g == 1 || g == n - 1;
  };
  for (const auto& t : oracle::subsets(n, 3)) {
    const VectorD tri[] = {poly[t[0]], poly[t[1]], poly[t[2]]};
    bool in = false;
    bool out = false;
    for (int q = 0; q < n; ++q) {
      if (q == t[0] || q == t[1] || q == t[2]) continue;
      (in_sphere(tri, poly[q]) == Sign::Positive ? in : out) = true;
    }
    const int edges = edge(t[0], t[1]) + edge(t[1], t[2]) + edge(t[0], t[2]);
    if (!in) (edges == 2 ? c.s_minus : edges == 1 ? c.u_minus : c.t_minus)++;
    if (!out) (edges == 2 ? c.s_plus : edges == 1 ? c.u_plus : c.t_plus)++;
  }
  return c;
}

TEST(Census2D, Quadrilateral) {
  const std::vector<VectorD> quad = {{0, 0}, {3, 0}, {3, 3}, {0, 4}};
  const auto c = census2d(quad);
  EXPECT_EQ(c.s_minus, 2);
  EXPECT_EQ(c.t_minus, 0);
  EXPECT_EQ(c.u_minus, 0);
  EXPECT_EQ(c.s_plus, 2);
  EXPECT_EQ(c.t_plus, 0);
  EXPECT_EQ(c.u_plus, 0);
  EXPECT_TRUE(c.identities_hold());
}

TEST(Census2D, HexagonMatchesBruteForce) {
  const auto ps = read_points(ESPH_TEST_DATA "/hexagon.txt");
  const auto c = census2d(ps.points);
  const auto ref = brute_census(ps.points);
  EXPECT_EQ(c.s_minus, ref.s_minus);
  EXPECT_EQ(c.t_minus, ref.t_minus);
  EXPECT_EQ(c.u_minus, ref.u_minus);
  EXPECT_EQ(c.s_plus, ref.s_plus);
  EXPECT_EQ(c.t_plus, ref.t_plus);
  EXPECT_EQ(c.u_plus, ref.u_plus);
  EXPECT_TRUE(c.identities_hold());
}

TEST(Census2D, IdentitiesOnRandomPolygons) {
  for (int t = 0; t < 40; ++t) {
    const auto poly = polygon(4 + t % 20, 600, t);
    const auto c = census2d(poly);
    EXPECT_TRUE(c.identities_hold()) << t;
    EXPECT_GE(c.s_minus, 2);
    EXPECT_GE(c.s_plus, 2);
    if (poly.size() <= 12) {
      const auto ref = brute_census(poly);
      EXPECT_EQ(c.s_minus, ref.s_minus);
      EXPECT_EQ(c.u_minus, ref.u_minus);
      EXPECT_EQ(c.t_minus, ref.t_minus);
      EXPECT_EQ(c.s_plus, ref.s_plus);
      EXPECT_EQ(c.u_plus, ref.u_plus);
      EXPECT_EQ(c.t_plus, ref.t_plus);
    }
  }
}

TEST(Census2D, ClockwiseInputWorks) {
  auto poly = polygon(9, 601);
  std::reverse(poly.begin(), poly.end());
  EXPECT_TRUE(census2d(poly).identities_hold());
}

TEST(Census2D, RejectsNonConvexOrder) {
  const std::vector<VectorD> bowtie = {{0, 0}, {3, 3}, {3, 0}, {0, 4}};
  EXPECT_THROW(census2d(bowtie), InputError);
  const std::vector<VectorD> reflex = {{0, 0}, {4, 0}, {1, 1}, {0, 4}};
  EXPECT_THROW(census2d(reflex), InputError);
  const std::vector<VectorD> tri = {{0, 0}, {4, 0}, {0, 4}};
  EXPECT_THROW(census2d(tri), InputError);
}

TEST(CurvatureRadii, NearRegularPentagon) {
  // Integer approximation of a regular pentagon of radius 1000.
  const std::vector<VectorD> penta = {{1000, 0}, {309, 951}, {-809, 588}, {-809, -587}, {310, -951}};
  const auto r = curvature_radii(penta);
  EXPECT_TRUE(r.condition_holds);
  EXPECT_GE(r.local_min_count, 2);
  EXPECT_GE(r.local_max_count, 2);
}

TEST(CurvatureRadii, RadiusOfRightAngle) {
  const std::vector<VectorD> quad = {{0, 0}, {2, 0}, {2, 2}, {0, 3}};
  const auto r = curvature_radii(quad);
  // Right angle at vertex 1, so R is half the hypotenuse from (0,0) to (2,2).
  EXPECT_EQ(r.radii_sq[1], 2);
}

TEST(CurvatureRadii, ObtuseAngleFailsCondition) {
  // The triangle at vertex 2 is obtuse at its neighbour (10,0), which puts the
  // circumcenter outside the angle at vertex 2.
  const std::vector<VectorD> poly = {{0, 0}, {10, 0}, {11, 1}, {0, 5}};
  EXPECT_FALSE(curvature_radii(poly).condition_holds);
}

TEST(CurvatureRadii, ExtremaAlternateWhenDistinct) {
  int checked = 0;
  for (int t = 0; t < 60; ++t) {
    const auto poly = polygon(4 + t % 15, 602, t);
    const auto r = curvature_radii(poly);
    std::vector<Scalar> sorted = r.radii_sq;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
    EXPECT_EQ(r.local_min_count, r.local_max_count);
    EXPECT_GE(r.local_min_count, 1);
    if (r.condition_holds) {
      EXPECT_GE(r.local_min_count, 2);
      EXPECT_GE(r.local_max_count, 2);
    }
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(RequireConvexPolygon, ReportsOrientation) {
  const std::vector<VectorD> ccw = {{0, 0}, {3, 0}, {3, 3}, {0, 4}};
  EXPECT_EQ(require_convex_polygon(ccw), Sign::Positive);
  std::vector<VectorD> cw(ccw.rbegin(), ccw.rend());
  EXPECT_EQ(require_convex_polygon(cw), Sign::Negative);
  const std::vector<VectorD> collinear = {{0, 0}, {1, 0}, {2, 0}, {0, 4}};
  EXPECT_THROW(require_convex_polygon(collinear), InputError);
}

}  // namespace
}  // namespace esph
