#include "esph/lp.hpp"

#include <array>
#include <cmath>
#include <random>

#include "esph/errors.hpp"
#include "esph/random.hpp"

namespace esph::lp {

namespace {

int sign(const Scalar& v) { return sgn(v); }
int sign(double v) { return (v > 0) - (v < 0); }

// Floating-point violations below this (relative) size are ignored.
constexpr double kTolerance = 1e-10;

template <typename T>
using Row = std::vector<T>;

template <typename T>
T row_dot(const Row<T>& a, const Row<T>& y) {
  T s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sign(a[i]) != 0) s += a[i] * y[i];
  }
  return s;
}

bool violated(const Row<Scalar>& a, const Scalar& b, const Row<Scalar>& v) { return row_dot(a, v) > b; }

bool violated(const Row<double>& a, double b, const Row<double>& v) {
  double scale = std::abs(b);
  for (std::size_t i = 0; i < a.size(); ++i) scale += std::abs(a[i] * v[i]);
  return row_dot(a, v) > b + kTolerance * (1 + scale);
}

// Exact elimination may use any nonzero coefficient; in floating point the
// largest one is the stable choice.
std::size_t pivot(const Row<Scalar>& a, std::size_t k) {
  for (std::size_t j = 0; j < k; ++j) {
    if (sgn(a[j]) != 0) return j;
  }
  return k;
}

std::size_t pivot(const Row<double>& a, std::size_t k) {
  std::size_t best = k;
  double norm = 0;
  for (std::size_t j = 0; j < k; ++j) norm = std::max(norm, std::abs(a[j]));
  if (norm == 0) return k;
  for (std::size_t j = 0; j < k; ++j) {
    if (best == k || std::abs(a[j]) > std::abs(a[best])) best = j;
  }
  return best;
}

bool degenerate_row(const Row<Scalar>&) { return false; }

bool degenerate_row(const Row<double>& a) {
  double norm = 0;
  for (double v : a) norm = std::max(norm, std::abs(v));
  return norm < 1e-300;
}

// Lexicographic minimum over the box: each variable goes to the bound chosen
// by the first objective that depends on it.
template <typename T>
Row<T> box_vertex(const std::vector<Row<T>>& obj, std::size_t k, const T& box) {
  Row<T> v(k);
  for (std::size_t i = 0; i < k; ++i) {
    int dir = 0;
    for (const auto& c : obj) {
      dir = sign(c[i]);
      if (dir != 0) break;
    }
    v[i] = dir > 0 ? T(-box) : box;
    if (dir == 0) v[i] = -box;
  }
  return v;
}

// Eliminates y_e using the equality a . y = b (a_e != 0).
template <typename T>
struct Elimination {
  const BasicHalfspace<T>& tight;
  std::size_t e;

  Row<T> reduce(const Row<T>& c) const {
    Row<T> out;
    out.reserve(c.size() - 1);
    const bool touches = sign(c[e]) != 0;
    T f = 0;
    if (touches) f = c[e] / tight.a[e];
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (j == e) continue;
      if (touches && sign(tight.a[j]) != 0) {
        out.push_back(c[j] - f * tight.a[j]);
      } else {
        out.push_back(c[j]);
      }
    }
    return out;
  }

  BasicHalfspace<T> reduce(const BasicHalfspace<T>& h) const {
    BasicHalfspace<T> out{reduce(h.a), h.b};
    if (sign(h.a[e]) != 0) out.b -= h.a[e] * tight.b / tight.a[e];
    return out;
  }

  Row<T> restore(const Row<T>& rest) const {
    Row<T> y;
    y.reserve(rest.size() + 1);
    T acc = tight.b;
    for (std::size_t j = 0, r = 0; j < tight.a.size(); ++j) {
      if (j == e) {
        y.emplace_back();
        continue;
      }
      if (sign(tight.a[j]) != 0) acc -= tight.a[j] * rest[r];
      y.push_back(rest[r++]);
    }
    y[e] = acc / tight.a[e];
    return y;
  }
};

template <typename T>
bool trivially_infeasible(const BasicHalfspace<T>& h) {
  if constexpr (std::is_same_v<T, double>) {
    return h.b < -kTolerance;
  } else {
    return sign(h.b) < 0;
  }
}

template <typename T>
std::optional<Row<T>> seidel(const std::vector<BasicHalfspace<T>>& hs, const std::vector<Row<T>>& obj,
                             std::size_t k, const T& box) {
  if (k == 0) {
    for (const auto& h : hs) {
      if (trivially_infeasible(h)) return std::nullopt;
    }
    return Row<T>{};
  }
  Row<T> v = box_vertex(obj, k, box);
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (!violated(hs[i].a, hs[i].b, v)) continue;

    const std::size_t e = pivot(hs[i].a, k);
    if (e == k || degenerate_row(hs[i].a)) return std::nullopt;  // 0 <= b with b < 0

    const Elimination<T> elim{hs[i], e};
    std::vector<BasicHalfspace<T>> sub;
    sub.reserve(i + 2);
    for (int s : {1, -1}) {
      BasicHalfspace<T> bound{Row<T>(k, T(0)), box};
      bound.a[e] = s;
      sub.push_back(elim.reduce(bound));
    }
    for (std::size_t j = 0; j < i; ++j) sub.push_back(elim.reduce(hs[j]));
    std::vector<Row<T>> sub_obj;
    sub_obj.reserve(obj.size());
    for (const auto& c : obj) sub_obj.push_back(elim.reduce(c));

    auto rest = seidel(sub, sub_obj, k - 1, box);
    if (!rest) return std::nullopt;
    v = elim.restore(*rest);
  }
  return v;
}

template <typename T>
std::optional<Row<T>> solve_impl(const BasicProblem<T>& problem, std::uint64_t seed) {
  const auto k = static_cast<std::size_t>(problem.vars);
  if (problem.vars < 1) throw InputError("lp: need at least one variable");
  if (sign(problem.box) <= 0) throw InputError("lp: box must be positive");
  for (const auto& h : problem.constraints) {
    if (h.a.size() != k) throw InputError("lp: constraint has the wrong arity");
  }
  std::vector<Row<T>> obj;
  for (const auto& c : problem.objectives) {
    if (c.size() != k) throw InputError("lp: objective has the wrong arity");
    obj.push_back(c);
  }
  for (std::size_t i = 0; i < k; ++i) {
    Row<T> unit(k, T(0));
    unit[i] = 1;
    obj.push_back(std::move(unit));
  }
  auto hs = problem.constraints;
  std::mt19937_64 rng(seed);
  stable_shuffle(hs, rng);
  return seidel(hs, obj, k, problem.box);
}

}  // namespace

std::optional<std::vector<Scalar>> solve(const Problem& problem, std::uint64_t seed) {
  return solve_impl(problem, seed);
}

namespace {

// The floating-point solver keeps rows in fixed arrays and reuses one buffer
// per recursion level.
constexpr std::size_t kMaxVars = 8;
using FixedRow = std::array<double, kMaxVars>;

struct FlatHalfspace {
  FixedRow a;
  double b;
};

struct Workspace {
  std::vector<std::vector<FlatHalfspace>> levels;
  std::vector<std::vector<FixedRow>> objectives;
};

bool flat_violated(const FlatHalfspace& h, const FixedRow& v, std::size_t k) {
  double dot = 0;
  double scale = std::abs(h.b);
  for (std::size_t i = 0; i < k; ++i) {
    dot += h.a[i] * v[i];
    scale += std::abs(h.a[i] * v[i]);
  }
  return dot > h.b + kTolerance * (1 + scale);
}

FixedRow flat_reduce(const FixedRow& c, const FlatHalfspace& tight, std::size_t e, std::size_t k) {
  FixedRow out{};
  const double f = c[e] / tight.a[e];
  for (std::size_t j = 0, r = 0; j < k; ++j) {
    if (j == e) continue;
    out[r++] = c[j] - f * tight.a[j];
  }
  return out;
}

bool flat_seidel(const std::vector<FlatHalfspace>& hs, const std::vector<FixedRow>& obj, std::size_t k, double box,
                 FixedRow& v, Workspace& ws) {
  if (k == 0) {
    for (const auto& h : hs) {
      if (h.b < -kTolerance) return false;
    }
    return true;
  }
  for (std::size_t i = 0; i < k; ++i) {
    int dir = 0;
    for (const auto& c : obj) {
      dir = sign(c[i]);
      if (dir != 0) break;
    }
    v[i] = dir > 0 ? -box : (dir < 0 ? box : -box);
  }
  auto& sub = ws.levels[k - 1];
  auto& sub_obj = ws.objectives[k - 1];
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (!flat_violated(hs[i], v, k)) continue;
    const FlatHalfspace& tight = hs[i];
    std::size_t e = k;
    double best = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (std::abs(tight.a[j]) > best) {
        best = std::abs(tight.a[j]);
        e = j;
      }
    }
    if (e == k || best < 1e-300) return false;

    sub.clear();
    for (int s : {1, -1}) {
      FixedRow unit{};
      unit[e] = s;
      sub.push_back({flat_reduce(unit, tight, e, k), box - s * tight.b / tight.a[e]});
    }
    for (std::size_t j = 0; j < i; ++j) {
      sub.push_back({flat_reduce(hs[j].a, tight, e, k), hs[j].b - hs[j].a[e] * tight.b / tight.a[e]});
    }
    sub_obj.clear();
    for (const auto& c : obj) sub_obj.push_back(flat_reduce(c, tight, e, k));

    FixedRow rest{};
    if (!flat_seidel(sub, sub_obj, k - 1, box, rest, ws)) return false;
    double acc = tight.b;
    for (std::size_t j = 0, r = 0; j < k; ++j) {
      if (j == e) continue;
      v[j] = rest[r++];
      acc -= tight.a[j] * v[j];
    }
    v[e] = acc / tight.a[e];
  }
  return true;
}

}  // namespace

std::optional<std::vector<double>> solve(const ProblemD& problem, std::uint64_t seed) {
  const auto k = static_cast<std::size_t>(problem.vars);
  if (problem.vars < 1) throw InputError("lp: need at least one variable");
  if (k > kMaxVars) return solve_impl(problem, seed);
  if (!(problem.box > 0)) throw InputError("lp: box must be positive");
  std::vector<FlatHalfspace> hs;
  hs.reserve(problem.constraints.size());
  for (const auto& h : problem.constraints) {
    if (h.a.size() != k) throw InputError("lp: constraint has the wrong arity");
    FlatHalfspace f{};
    std::copy(h.a.begin(), h.a.end(), f.a.begin());
    f.b = h.b;
    hs.push_back(f);
  }
  std::vector<FixedRow> obj;
  for (const auto& c : problem.objectives) {
    if (c.size() != k) throw InputError("lp: objective has the wrong arity");
    FixedRow r{};
    std::copy(c.begin(), c.end(), r.begin());
    obj.push_back(r);
  }
  for (std::size_t i = 0; i < k; ++i) {
    FixedRow unit{};
    unit[i] = 1;
    obj.push_back(unit);
  }
  std::mt19937_64 rng(seed);
  stable_shuffle(hs, rng);

  Workspace ws;
  ws.levels.resize(k);
  ws.objectives.resize(k);
  for (auto& l : ws.levels) l.reserve(hs.size() + 2);
  FixedRow v{};
  if (!flat_seidel(hs, obj, k, problem.box, v, ws)) return std::nullopt;
  return std::vector<double>(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
}

}  // namespace esph::lp
