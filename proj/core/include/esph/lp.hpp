#pragma once

// Seidel's randomized incremental linear programming for a handful of
// variables and a few hundred constraints. The rational instantiation is
// exact; the double one is a fast approximation whose answers callers must
// certify themselves.

#include <cstdint>
#include <optional>
#include <vector>

#include "esph/exactnum.hpp"

namespace esph::lp {

// a . y <= b
template <typename T>
struct BasicHalfspace {
  std::vector<T> a;
  T b;
};

template <typename T>
struct BasicProblem {
  int vars = 0;
  std::vector<BasicHalfspace<T>> constraints;
  // Minimized lexicographically. The coordinate functions y_0..y_{k-1} are
  // appended internally, so the optimum is always a unique point.
  std::vector<std::vector<T>> objectives;
  // Every variable is confined to [-box, box].
  T box = 1;
};

using Halfspace = BasicHalfspace<Scalar>;
using Problem = BasicProblem<Scalar>;
using HalfspaceD = BasicHalfspace<double>;
using ProblemD = BasicProblem<double>;

// Lexicographic minimum, or nullopt when the problem is infeasible.
std::optional<std::vector<Scalar>> solve(const Problem& problem, std::uint64_t seed);

// Same algorithm in floating point, with a relative feasibility tolerance.
std::optional<std::vector<double>> solve(const ProblemD& problem, std::uint64_t seed);

}  // namespace esph::lp
