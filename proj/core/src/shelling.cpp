#include "esph/shelling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "esph/errors.hpp"
#include "esph/lp.hpp"
#include "esph/random.hpp"

namespace esph {

namespace {

constexpr std::uint64_t kLpSeed = 0xb3e0'a5ULL;
constexpr int kMaxTieRetries = 16;

// Facet hyperplane as a graph over the first d coordinates:
// x_{d+1} = (q - p . x) / r with integer p, q and r > 0.
struct Graph {
  std::vector<BigInt> p;
  BigInt q;
  BigInt r;

  Scalar at(const VectorD& x) const {
    Scalar v = q;
    for (std::size_t i = 0; i < p.size(); ++i) v -= p[i] * x[i];
    return v / r;
  }
};

std::vector<Graph> facet_graphs(const HullComplex& lifted) {
  const int d = lifted.ambient_dim - 1;
  std::vector<Graph> graphs;
  graphs.reserve(lifted.facets.size());
  for (const auto& f : lifted.facets) {
    if (sgn(f.normal[d]) == 0) throw GenericityViolation("vertical facet hyperplane", f.vertex_ids);
    std::vector<Scalar> row(f.normal.begin(), f.normal.end());
    row.push_back(f.offset);
    std::vector<BigInt> ints = clear_denominators(row);
    if (sgn(ints[d]) < 0) {
      for (auto& v : ints) v = -v;
    }
    Graph g;
    g.p.assign(ints.begin(), ints.begin() + d);
    g.r = ints[d];
    g.q = ints[d + 1];
    graphs.push_back(std::move(g));
  }
  return graphs;
}

VectorD project_down(const VectorD& p, int d) {
  VectorD x(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) x[i] = p[i];
  return x;
}

// A positive multiple of sigma (h_j(x) - h_F(x)); the witness region is
// where every gap is positive.
struct Gap {
  std::vector<BigInt> a;
  BigInt b;

  Scalar at(const VectorD& x) const {
    Scalar v = b;
    for (std::size_t i = 0; i < a.size(); ++i) v += a[i] * x[i];
    return v;
  }
};

std::vector<Gap> gaps_for(const std::vector<Graph>& graphs, int facet, EnvelopeSide side) {
  const int sigma = side == EnvelopeSide::Lower ? 1 : -1;
  const Graph& f = graphs[facet];
  const std::size_t d = f.p.size();
  std::vector<Gap> gaps;
  gaps.reserve(graphs.size());
  for (int j = 0; j < static_cast<int>(graphs.size()); ++j) {
    if (j == facet) continue;
    const Graph& g = graphs[j];
    Gap gap;
    gap.a.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
      gap.a[i] = f.p[i] * g.r - g.p[i] * f.r;
      if (sigma < 0) gap.a[i] = -gap.a[i];
    }
    gap.b = g.q * f.r - f.q * g.r;
    if (sigma < 0) gap.b = -gap.b;
    gaps.push_back(std::move(gap));
  }
  return gaps;
}

bool strictly_inside(const std::vector<Gap>& gaps, const VectorD& x) {
  const BigInt den = common_denominator(x.coords());
  const std::vector<BigInt> num = clear_denominators(x.coords());
  BigInt v;
  return std::all_of(gaps.begin(), gaps.end(), [&](const Gap& g) {
    v = g.b * den;
    for (std::size_t i = 0; i < num.size(); ++i) v += g.a[i] * num[i];
    return sgn(v) > 0;
  });
}

// Maximize s subject to s <= gap_j(x), s <= 1, over a box wide enough to
// hold every vertex of the closed witness region (Hadamard bound on the
// integer rows). Exact throughout.
std::optional<VectorD> exact_witness(const std::vector<Gap>& gaps, int d, std::uint64_t seed) {
  lp::Problem prob;
  prob.vars = d + 1;
  BigInt widest = 1;
  for (const auto& g : gaps) {
    BigInt l1 = abs(g.b);
    lp::Halfspace h;
    for (const auto& v : g.a) {
      l1 += abs(v);
      h.a.emplace_back(BigInt(-v));
    }
    if (l1 > widest) widest = l1;
    h.a.emplace_back(1);
    h.b = Scalar(g.b);
    prob.constraints.push_back(std::move(h));
  }
  lp::Halfspace cap{std::vector<Scalar>(static_cast<std::size_t>(d + 1), Scalar(0)), 1};
  cap.a[d] = 1;
  prob.constraints.push_back(std::move(cap));
  std::vector<Scalar> maximize_s(static_cast<std::size_t>(d + 1), Scalar(0));
  maximize_s[d] = -1;
  prob.objectives.push_back(std::move(maximize_s));
  BigInt bound;
  mpz_pow_ui(bound.get_mpz_t(), widest.get_mpz_t(), static_cast<unsigned long>(d));
  prob.box = Scalar(BigInt(bound + 1));

  auto sol = lp::solve(prob, seed);
  if (!sol || sgn((*sol)[d]) <= 0) return std::nullopt;
  VectorD x(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) x[i] = (*sol)[i];
  if (!strictly_inside(gaps, x)) throw InternalError("lp returned a point outside the witness region");
  return x;
}

// Solves sum_j lambda_j (a_j, 1) = (0, 1) over the chosen gaps exactly;
// nullopt unless the columns are independent and the system is consistent.
std::optional<std::vector<Scalar>> farkas_weights(const std::vector<Gap>& gaps, const std::vector<int>& cols, int d) {
  const std::size_t r = cols.size();
  const std::size_t rows = static_cast<std::size_t>(d) + 1;
  std::vector<std::vector<Scalar>> m(rows, std::vector<Scalar>(r + 1));
  for (std::size_t c = 0; c < r; ++c) {
    for (int i = 0; i < d; ++i) m[i][c] = gaps[cols[c]].a[i];
    m[d][c] = 1;
  }
  m[d][r] = 1;
  std::size_t row = 0;
  for (std::size_t c = 0; c < r; ++c, ++row) {
    std::size_t piv = row;
    while (piv < rows && sgn(m[piv][c]) == 0) ++piv;
    if (piv == rows) return std::nullopt;
    std::swap(m[piv], m[row]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || sgn(m[i][c]) == 0) continue;
      const Scalar f = m[i][c] / m[row][c];
      for (std::size_t j = c; j <= r; ++j) m[i][j] -= f * m[row][j];
    }
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (sgn(m[i][r]) != 0) return std::nullopt;
  }
  std::vector<Scalar> lambda(r);
  for (std::size_t c = 0; c < r; ++c) lambda[c] = m[c][r] / m[c][c];
  return lambda;
}

// Row scaled by a power of two so that its largest entry is near 1.
std::vector<double> scaled_row(const Gap& g) {
  long top = 0;
  for (const auto& v : g.a) top = std::max<long>(top, static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2)));
  top = std::max<long>(top, static_cast<long>(mpz_sizeinbase(g.b.get_mpz_t(), 2)));
  auto conv = [top](const BigInt& v) {
    long e = 0;
    const double m = mpz_get_d_2exp(&e, v.get_mpz_t());
    return std::ldexp(m, static_cast<int>(e - top));
  };
  std::vector<double> row;
  row.reserve(g.a.size() + 1);
  for (const auto& v : g.a) row.push_back(conv(v));
  row.push_back(conv(g.b));
  return row;
}

// Float least-squares screen for farkas_weights on the scaled rows: false
// when the subset is numerically singular or needs clearly negative weights.
bool plausible_weights(const std::vector<std::vector<double>>& rows, const std::vector<int>& cols, int d) {
  const std::size_t r = cols.size();
  const std::size_t m = static_cast<std::size_t>(d) + 1;
  std::vector<std::vector<double>> a(m, std::vector<double>(r + 1, 0.0));
  for (std::size_t c = 0; c < r; ++c) {
    for (int i = 0; i < d; ++i) a[i][c] = rows[cols[c]][i];
    a[d][c] = 1;
  }
  a[d][r] = 1;
  std::size_t row = 0;
  for (std::size_t c = 0; c < r; ++c, ++row) {
    std::size_t piv = row;
    for (std::size_t i = row + 1; i < m; ++i) {
      if (std::abs(a[i][c]) > std::abs(a[piv][c])) piv = i;
    }
    if (std::abs(a[piv][c]) < 1e-12) return false;
    std::swap(a[piv], a[row]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row) continue;
      const double f = a[i][c] / a[row][c];
      for (std::size_t j = c; j <= r; ++j) a[i][j] -= f * a[row][j];
    }
  }
  for (std::size_t c = 0; c < r; ++c) {
    if (a[c][r] / a[c][c] < -1e-9) return false;
  }
  return true;
}

enum class Verdict { Feasible, Infeasible, Unknown };

struct FilteredResult {
  Verdict verdict = Verdict::Unknown;
  VectorD x;
};

// Solves the witness LP in floating point and tries to certify its answer
// exactly: a feasible point by evaluating every gap, infeasibility by
// nonnegative weights on the tight gaps that cancel the linear parts and
// leave a nonpositive constant.
FilteredResult filtered_witness(const std::vector<Gap>& gaps, int d, std::uint64_t seed) {
  constexpr double kBox = 1e6;
  lp::ProblemD prob;
  prob.vars = d + 1;
  prob.box = kBox;
  std::vector<std::vector<double>> rows;
  rows.reserve(gaps.size());
  for (const auto& g : gaps) {
    std::vector<double> row = scaled_row(g);
    lp::HalfspaceD h;
    for (int i = 0; i < d; ++i) h.a.push_back(-row[i]);
    h.a.push_back(1);
    h.b = row[d];
    prob.constraints.push_back(std::move(h));
    rows.push_back(std::move(row));
  }
  lp::HalfspaceD cap{std::vector<double>(static_cast<std::size_t>(d + 1), 0.0), 1.0};
  cap.a[d] = 1;
  prob.constraints.push_back(std::move(cap));
  std::vector<double> maximize_s(static_cast<std::size_t>(d + 1), 0.0);
  maximize_s[d] = -1;
  prob.objectives.push_back(std::move(maximize_s));

  const auto sol = lp::solve(prob, seed);
  if (!sol) return {};
  const double s = (*sol)[d];

  if (s > 0) {
    FilteredResult r;
    r.x = VectorD(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) r.x[i] = Scalar((*sol)[i]);
    if (strictly_inside(gaps, r.x)) {
      r.verdict = Verdict::Feasible;
      return r;
    }
  }

  // Gaps nearly tight at the float optimum, smallest slack first.
  std::vector<std::pair<double, int>> slack;
  for (int j = 0; j < static_cast<int>(rows.size()); ++j) {
    double g = rows[j][d];
    for (int i = 0; i < d; ++i) g += rows[j][i] * (*sol)[i];
    slack.emplace_back(g - s, j);
  }
  std::sort(slack.begin(), slack.end());
  std::vector<int> tight;
  for (const auto& [sl, j] : slack) {
    if (sl > 1e-6 || static_cast<int>(tight.size()) == 3 * (d + 1)) break;
    tight.push_back(j);
  }

  // Generic supports have d+1 gaps, so larger subsets come first; a float
  // solve screens each subset before the exact one.
  const int t = static_cast<int>(tight.size());
  for (int size = std::min(t, d + 1); size >= 1; --size) {
    std::vector<int> pick(static_cast<std::size_t>(size));
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      std::vector<int> cols;
      for (int p : pick) cols.push_back(tight[p]);
      if (plausible_weights(rows, cols, d)) {
        if (auto lambda = farkas_weights(gaps, cols, d)) {
          Scalar constant = 0;
          bool nonnegative = true;
          for (std::size_t c = 0; c < cols.size(); ++c) {
            if (sgn((*lambda)[c]) < 0) nonnegative = false;
            constant += (*lambda)[c] * gaps[cols[c]].b;
          }
          if (nonnegative && sgn(constant) <= 0) return {Verdict::Infeasible, {}};
        }
      }
      int i = size - 1;
      while (i >= 0 && pick[i] == t - size + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return {};
}

std::optional<VectorD> solve_witness(const std::vector<Graph>& graphs, int facet, EnvelopeSide side,
                                     const VectorD& center_x) {
  const int d = static_cast<int>(center_x.dim());
  const std::vector<Gap> gaps = gaps_for(graphs, facet, side);
  const std::uint64_t seed = derive_seed(kLpSeed, static_cast<std::uint64_t>(facet));

  const FilteredResult quick = filtered_witness(gaps, d, seed);
  if (quick.verdict == Verdict::Infeasible) return std::nullopt;
  if (quick.verdict == Verdict::Feasible) return quick.x;

  auto exact = exact_witness(gaps, d, seed);
  if (!exact) return std::nullopt;
  VectorD x = std::move(*exact);

  // The exact optimum may sit far out on the box; slide it toward the
  // projected hull centroid.
  const VectorD toward = center_x - x;
  std::optional<Scalar> limit;
  for (const auto& g : gaps) {
    Scalar slope = 0;
    for (int i = 0; i < d; ++i) slope += g.a[i] * toward[i];
    if (sgn(slope) >= 0) continue;
    Scalar root = g.at(x) / -slope;
    if (!limit || root < *limit) limit = root;
  }
  const Scalar step = (!limit || *limit > 1) ? Scalar(1) : Scalar(*limit / 2);
  x += toward * step;
  return x;
}

VectorD witness_point(const Graph& g, VectorD x) {
  Scalar height = g.at(x);
  x.push_back(std::move(height));
  return x;
}

EnvelopeSide side_of(const Facet& f) {
  return sgn(f.normal[f.normal.dim() - 1]) < 0 ? EnvelopeSide::Lower : EnvelopeSide::Upper;
}

}  // namespace

std::optional<VectorD> envelope_witness(const HullComplex& lifted, int facet, EnvelopeSide side) {
  if (facet < 0 || facet >= static_cast<int>(lifted.facets.size())) throw InputError("facet id out of range");
  const auto graphs = facet_graphs(lifted);
  const int d = lifted.ambient_dim - 1;
  auto x = solve_witness(graphs, facet, side, project_down(centroid(lifted.points), d));
  if (!x) return std::nullopt;
  return witness_point(graphs[facet], std::move(*x));
}

BMEarReport bm_ear_set(const HullComplex& lifted, const FacetSplit& split) {
  const auto graphs = facet_graphs(lifted);
  const int d = lifted.ambient_dim - 1;
  const VectorD center_x = project_down(centroid(lifted.points), d);
  BMEarReport report;
  auto scan = [&](const std::vector<int>& group, EnvelopeSide side, std::vector<int>& out) {
    for (int f : group) {
      if (auto x = solve_witness(graphs, f, side, center_x)) {
        out.push_back(f);
        report.witnesses.emplace(f, witness_point(graphs[f], std::move(*x)));
      }
    }
    std::sort(out.begin(), out.end());
  };
  scan(split.lower, EnvelopeSide::Lower, report.bmd_facet_ids);
  scan(split.upper, EnvelopeSide::Upper, report.bmud_facet_ids);
  if (report.bmd_facet_ids.empty() && report.bmud_facet_ids.empty()) {
    throw InternalError("no facet supports either envelope");
  }
  return report;
}

ShellingOrder line_shelling(const HullComplex& lifted, std::span<const int> group, int target) {
  if (target < 0 || target >= static_cast<int>(lifted.facets.size())) throw InputError("facet id out of range");
  auto w = envelope_witness(lifted, target, side_of(lifted.facets[target]));
  if (!w) throw NotABMEar("facet " + std::to_string(target) + " does not support its envelope");
  return line_shelling(lifted, group, target, *w);
}

ShellingOrder line_shelling(const HullComplex& lifted, std::span<const int> group, int target,
                            const VectorD& witness) {
  const int nf = static_cast<int>(lifted.facets.size());
  if (target < 0 || target >= nf) throw InputError("facet id out of range");
  if (std::find(group.begin(), group.end(), target) == group.end()) {
    throw InputError("target facet is not in the group");
  }
  const EnvelopeSide side = side_of(lifted.facets[target]);
  for (int f : group) {
    if (f < 0 || f >= nf || side_of(lifted.facets[f]) != side) throw InputError("mixed or invalid facet group");
  }
  const int d = lifted.ambient_dim - 1;
  const auto graphs = facet_graphs(lifted);
  const auto gaps = gaps_for(graphs, target, side);
  VectorD x = project_down(witness, d);
  if (witness.dim() != static_cast<std::size_t>(d + 1) || lifted.facets[target].side(witness) != Sign::Zero ||
      !strictly_inside(gaps, x)) {
    throw NotABMEar("point is not an envelope witness for facet " + std::to_string(target));
  }

  ShellingOrder order;
  order.kind = side == EnvelopeSide::Lower ? TriangulationKind::Delaunay : TriangulationKind::UpperDelaunay;
  order.line_base = centroid(lifted.points);
  const VectorD center_x = project_down(order.line_base, d);

  VectorD w = witness;
  for (int attempt = 0; attempt <= kMaxTieRetries; ++attempt) {
    const VectorD dir = w - order.line_base;
    std::vector<std::pair<Scalar, int>> crossing;
    crossing.reserve(group.size());
    for (int f : group) {
      const Facet& fc = lifted.facets[f];
      const Scalar num = fc.offset - dot(fc.normal, order.line_base);
      const Scalar den = dot(fc.normal, dir);
      if (sgn(num) <= 0 || sgn(den) <= 0) throw InternalError("witness ray misses a facet of its group");
      crossing.emplace_back(num / den, f);
    }
    std::sort(crossing.begin(), crossing.end());
    if (crossing.back().second != target || crossing.back().first != 1) {
      throw InternalError("witness ray does not cross the target last");
    }
    const bool tie = std::adjacent_find(crossing.begin(), crossing.end(), [](const auto& a, const auto& b) {
                       return a.first == b.first;
                     }) != crossing.end();
    if (!tie) {
      order.line_direction = dir;
      for (const auto& [t, f] : crossing) order.facet_order.push_back(f);
      return order;
    }

    // Nudge the witness along the envelope facet, toward the centre and off
    // any special direction, by a shrinking rational step.
    VectorD nudge = center_x - x;
    for (int i = 0; i < d; ++i) nudge[i] += fraction(i + 1, 7 + 3 * attempt);
    Scalar eps = fraction(1, BigInt(1) << (attempt + 1));
    VectorD moved = x + nudge * eps;
    for (int halvings = 0; !strictly_inside(gaps, moved); ++halvings) {
      if (halvings > 256) throw InternalError("cannot perturb the witness inside its envelope facet");
      eps /= 2;
      moved = x + nudge * eps;
    }
    x = moved;
    w = witness_point(graphs[target], x);
  }
  throw InternalError("crossing ties persist after perturbation");
}

ShellingCheck validate_shelling(std::span<const IdTuple> simplices, int d) {
  ShellingCheck check;
  auto fail = [&](int pos, std::string why) {
    check.ok = false;
    check.position = pos;
    check.reason = std::move(why);
    return check;
  };
  const int m = static_cast<int>(simplices.size());
  for (int s = 0; s < m; ++s) {
    if (static_cast<int>(simplices[s].size()) != d + 1) return fail(s, "not a d-simplex");
  }
  for (int s = 1; s < m; ++s) {
    std::set<IdTuple> shared_faces;
    std::vector<IdTuple> meets;
    for (int t = 0; t < s; ++t) {
      IdTuple common;
      std::set_intersection(simplices[s].begin(), simplices[s].end(), simplices[t].begin(), simplices[t].end(),
                            std::back_inserter(common));
      if (common.empty()) continue;
      if (static_cast<int>(common.size()) == d + 1) return fail(s, "repeated simplex");
      if (static_cast<int>(common.size()) == d) shared_faces.insert(common);
      meets.push_back(std::move(common));
    }
    if (shared_faces.empty()) return fail(s, "shares no (d-1)-face with earlier simplices");
    for (const auto& c : meets) {
      const bool covered = std::any_of(shared_faces.begin(), shared_faces.end(), [&](const IdTuple& f) {
        return std::includes(f.begin(), f.end(), c.begin(), c.end());
      });
      if (!covered) return fail(s, "meets earlier simplices in a face outside the shared (d-1)-faces");
    }
    if (static_cast<int>(shared_faces.size()) == d + 1 && s != m - 1) {
      return fail(s, "entire boundary already covered before the last position");
    }
  }
  return check;
}

ShellingCheck validate_shelling(const ShellingOrder& order, const Triangulation& t) {
  std::map<int, int> by_facet;
  for (int s = 0; s < static_cast<int>(t.source_facets.size()); ++s) by_facet.emplace(t.source_facets[s], s);
  ShellingCheck check;
  if (order.facet_order.size() != t.simplices.size()) {
    check.ok = false;
    check.reason = "order length differs from the triangulation";
    return check;
  }
  std::vector<IdTuple> simplices;
  std::set<int> used;
  for (int i = 0; i < static_cast<int>(order.facet_order.size()); ++i) {
    auto it = by_facet.find(order.facet_order[i]);
    if (it == by_facet.end() || !used.insert(it->second).second) {
      check.ok = false;
      check.position = i;
      check.reason = "facet is not a distinct simplex of the triangulation";
      return check;
    }
    simplices.push_back(t.simplices[it->second]);
  }
  return validate_shelling(simplices, t.dim);
}

}  // namespace esph
