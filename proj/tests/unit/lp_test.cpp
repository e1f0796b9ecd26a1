#include <gtest/gtest.h>

#include <cmath>

#include "esph/lp.hpp"
#include "esph/random.hpp"

namespace esph::lp {
namespace {

Problem triangle_problem() {
  // x >= 0, y >= 0, x + y <= 1; minimize -x - 2y.
  Problem p;
  p.vars = 2;
  p.box = 10;
  p.constraints = {{{-1, 0}, 0}, {{0, -1}, 0}, {{1, 1}, 1}};
  p.objectives = {{-1, -2}};
  return p;
}

TEST(SeidelExact, TriangleOptimum) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto x = solve(triangle_problem(), seed);
    ASSERT_TRUE(x);
    EXPECT_EQ((*x)[0], 0);
    EXPECT_EQ((*x)[1], 1);
  }
}

TEST(SeidelExact, LexicographicTieBreak) {
  // Minimizing -x - y leaves the whole edge x + y = 1 optimal; the appended
  // coordinate objectives then pick the smallest x.
  auto p = triangle_problem();
  p.objectives = {{-1, -1}};
  const auto x = solve(p, 3);
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], 0);
  EXPECT_EQ((*x)[1], 1);
}

TEST(SeidelExact, Infeasible) {
  Problem p;
  p.vars = 2;
  p.box = 10;
  p.constraints = {{{1, 0}, 1}, {{-1, 0}, -2}};
  p.objectives = {{1, 0}};
  EXPECT_FALSE(solve(p, 1));
}

TEST(SeidelExact, BoxBoundsUnboundedDirection) {
  Problem p;
  p.vars = 3;
  p.box = 5;
  p.constraints = {{{1, 1, 1}, 2}};
  p.objectives = {{0, 0, -1}};
  const auto x = solve(p, 7);
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[2], 5);
  EXPECT_EQ((*x)[0], -5);
  EXPECT_EQ((*x)[1], -5);
}

TEST(SeidelExact, RationalVertex) {
  // 3x + y <= 2, x + 4y <= 3; maximize x + y -> (5/11, 7/11).
  Problem p;
  p.vars = 2;
  p.box = 100;
  p.constraints = {{{3, 1}, 2}, {{1, 4}, 3}};
  p.objectives = {{-1, -1}};
  const auto x = solve(p, 2);
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], Scalar(5, 11));
  EXPECT_EQ((*x)[1], Scalar(7, 11));
}

TEST(SeidelDouble, AgreesWithExactOnRandomProblems) {
  std::mt19937_64 rng(99);
  int feasible = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int vars = 2 + trial % 3;
    Problem p;
    ProblemD q;
    p.vars = q.vars = vars;
    p.box = q.box = 50;
    const int m = 4 + static_cast<int>(uniform_below(rng, 12));
    for (int i = 0; i < m; ++i) {
      Halfspace h;
      HalfspaceD hd;
      for (int k = 0; k < vars; ++k) {
        const long c = static_cast<long>(uniform_below(rng, 21)) - 10;
        h.a.push_back(c);
        hd.a.push_back(static_cast<double>(c));
      }
      const long b = static_cast<long>(uniform_below(rng, 21)) - 5;
      h.b = b;
      hd.b = static_cast<double>(b);
      p.constraints.push_back(h);
      q.constraints.push_back(hd);
    }
    std::vector<Scalar> obj;
    std::vector<double> objd;
    for (int k = 0; k < vars; ++k) {
      const long c = static_cast<long>(uniform_below(rng, 11)) - 5;
      obj.push_back(c);
      objd.push_back(static_cast<double>(c));
    }
    p.objectives = {obj};
    q.objectives = {objd};
    const auto x = solve(p, static_cast<std::uint64_t>(trial));
    const auto y = solve(q, static_cast<std::uint64_t>(trial));
    ASSERT_EQ(x.has_value(), y.has_value()) << "trial " << trial;
    if (!x) continue;
    ++feasible;
    Scalar vx = 0;
    double vy = 0;
    for (int k = 0; k < vars; ++k) {
      vx += obj[k] * (*x)[k];
      vy += objd[k] * (*y)[k];
    }
    EXPECT_NEAR(vx.get_d(), vy, 1e-6 * (1 + std::abs(vy))) << "trial " << trial;
  }
  EXPECT_GT(feasible, 50);
}

}  // namespace
}  // namespace esph::lp
