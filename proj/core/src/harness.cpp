#include "esph/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <thread>

#include "esph/pointfile.hpp"
#include "esph/random.hpp"

namespace esph {

void validate(const TrialConfig& cfg) {
  if (cfg.d < 2) throw InputError("trial config: d must be at least 2");
  if (cfg.n_min < cfg.d + 2) throw InputError("trial config: n must be at least d+2");
  if (cfg.n_max < cfg.n_min) throw InputError("trial config: empty n range");
  if (cfg.trials < 1) throw InputError("trial config: trials must be positive");
  if (cfg.denominator_bound < 1) throw InputError("trial config: denominator bound must be positive");
  if (cfg.max_rejections < 0) throw InputError("trial config: negative rejection limit");
}

std::uint64_t trial_seed(const TrialConfig& cfg, int trial_index) {
  return derive_seed(cfg.seed, static_cast<std::uint64_t>(trial_index));
}

namespace {

using IntPoint = std::vector<std::int64_t>;

// Uniform direction by rejection in the unit ball, scaled to a radius in
// [1, 1 + 1/16) and rounded to the integer grid of spacing 1/bound.
IntPoint sample_point(std::mt19937_64& rng, int d, std::int64_t bound) {
  std::vector<double> v(static_cast<std::size_t>(d));
  double r2 = 0;
  do {
    r2 = 0;
    for (auto& c : v) {
      c = 2 * uniform_unit(rng) - 1;
      r2 += c * c;
    }
  } while (r2 > 1 || r2 < 1e-6);
  const double scale = (1 + uniform_unit(rng) / 16) / std::sqrt(r2) * static_cast<double>(bound);
  IntPoint p(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) p[i] = std::llround(v[i] * scale);
  return p;
}

// Counterclockwise angular order around the origin.
bool angle_less(const IntPoint& a, const IntPoint& b) {
  const bool ha = a[1] < 0 || (a[1] == 0 && a[0] < 0);
  const bool hb = b[1] < 0 || (b[1] == 0 && b[0] < 0);
  if (ha != hb) return hb;
  return a[0] * b[1] - a[1] * b[0] > 0;
}

std::int64_t turn(const IntPoint& a, const IntPoint& b, const IntPoint& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}

// Inserts `p` into the counterclockwise polygon if every turn near it stays
// strictly convex; returns false (and leaves `poly` alone) otherwise.
bool insert_convex(std::vector<IntPoint>& poly, const IntPoint& p) {
  auto pos = std::upper_bound(poly.begin(), poly.end(), p, angle_less);
  const auto at = static_cast<std::size_t>(pos - poly.begin());
  poly.insert(pos, p);
  const std::size_t m = poly.size();
  bool ok = true;
  if (m >= 3) {
    for (std::size_t k = 0; k < 3 && ok; ++k) {
      const std::size_t mid = (at + m - 1 + k) % m;
      ok = turn(poly[(mid + m - 1) % m], poly[mid], poly[(mid + 1) % m]) > 0;
    }
  }
  if (!ok) poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(at));
  return ok;
}

std::vector<VectorD> to_rational(const std::vector<IntPoint>& pts, std::int64_t bound) {
  const BigInt q(static_cast<long>(bound));
  std::vector<VectorD> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    VectorD v;
    for (auto c : p) v.push_back(fraction(BigInt(static_cast<long>(c)), q));
    out.push_back(std::move(v));
  }
  return out;
}

// Index of a point to drop so that the set may become generic and convex,
// or -1 if the set already is.
int offending_point(const std::vector<VectorD>& pts, int d) {
  try {
    convex_hull(pts, d);
  } catch (const NotInConvexPosition& e) {
    return e.point() >= 0 ? e.point() : static_cast<int>(pts.size()) - 1;
  } catch (const GenericityViolation& e) {
    return e.ids().empty() ? static_cast<int>(pts.size()) - 1 : e.ids().back();
  }
  const auto rep = check_generic(pts, d);
  if (!rep.violations.empty() && !rep.violations.front().empty()) return rep.violations.front().back();
  if (!rep.is_generic) return static_cast<int>(pts.size()) - 1;
  return -1;
}

}  // namespace

std::vector<VectorD> gen_polytope(const TrialConfig& cfg, int trial_index) {
  validate(cfg);
  std::mt19937_64 rng(trial_seed(cfg, trial_index));
  const int n = cfg.n_min + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(cfg.n_max - cfg.n_min + 1)));
  std::vector<IntPoint> pts;
  int rejections = 0;
  auto reject = [&] {
    if (++rejections > cfg.max_rejections) {
      throw GenerationFailure("trial " + std::to_string(trial_index) + ": gave up after " +
                              std::to_string(cfg.max_rejections) + " rejected candidates with " +
                              std::to_string(pts.size()) + " of " + std::to_string(n) + " points placed");
    }
  };
  while (true) {
    while (static_cast<int>(pts.size()) < n) {
      IntPoint p = sample_point(rng, cfg.d, cfg.denominator_bound);
      if (cfg.d == 2) {
        if (!insert_convex(pts, p)) reject();
      } else {
        pts.push_back(std::move(p));
      }
    }
    auto rational = to_rational(pts, cfg.denominator_bound);
    const int bad = offending_point(rational, cfg.d);
    if (bad < 0) return rational;
    pts.erase(pts.begin() + bad);
    reject();
  }
}

std::vector<int> boundary_cycle(const Triangulation& dt) {
  if (dt.dim != 2) throw InputError("boundary_cycle needs a planar triangulation");
  const int n = static_cast<int>(dt.points.size());
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const auto& e : boundary_facets(dt)) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  std::vector<int> cycle{0};
  int prev = -1;
  int cur = 0;
  while (static_cast<int>(cycle.size()) < n) {
    if (adj[cur].size() != 2) throw InternalError("polygon boundary is not a cycle");
    const int next = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
    prev = cur;
    cur = next;
    cycle.push_back(cur);
  }
  return cycle;
}

namespace {

std::map<int, int> simplex_of_facet(const Triangulation& t) {
  std::map<int, int> m;
  for (int i = 0; i < static_cast<int>(t.source_facets.size()); ++i) m[t.source_facets[i]] = i;
  return m;
}

bool shellings_end_at_ears(const Analysis& a, const std::vector<int>& group, const std::vector<int>& targets,
                           const Triangulation& t, const EarSet& ears) {
  const auto simplex = simplex_of_facet(t);
  for (int f : targets) {
    try {
      const auto order = line_shelling(a.tri.lifted, group, f, a.bm.witnesses.at(f));
      if (order.facet_order.empty() || order.facet_order.back() != f) return false;
      if (!validate_shelling(order, t)) return false;
      if (!ears.contains(simplex.at(f))) return false;
    } catch (const NotABMEar&) {
      return false;
    }
  }
  return true;
}

}  // namespace

Analysis analyze(std::span<const VectorD> points, int d, std::uint64_t hull_seed) {
  Analysis a;
  a.d = d;
  a.points.assign(points.begin(), points.end());
  a.tri = delaunay_triangulations(points, d, hull_seed);
  a.d_ears = detect_ears(a.tri.dt);
  a.ud_ears = detect_ears(a.tri.udt);
  a.bm = bm_ear_set(a.tri.lifted, a.tri.split);
  a.spheres = neighboring_sphere_census(points, d, a.tri.dt, a.tri.udt);
  if (d == 2) {
    std::vector<VectorD> polygon;
    for (int i : boundary_cycle(a.tri.dt)) polygon.push_back(points[i]);
    a.census = census2d(polygon);
  }
  return a;
}

std::vector<IdTuple> ear_tuples(const Triangulation& t, const EarSet& ears) {
  std::vector<IdTuple> out;
  out.reserve(ears.size());
  for (int i : ears.ear_simplex_ids) out.push_back(t.simplices[i]);
  return out;
}

InstanceRecord verify_analysis(const Analysis& a, const VerifyOptions& options) {
  InstanceRecord r;
  r.d = a.d;
  r.n = static_cast<int>(a.points.size());
  r.is_generic = true;
  r.dt_simplices = static_cast<int>(a.tri.dt.simplices.size());
  r.udt_simplices = static_cast<int>(a.tri.udt.simplices.size());
  r.d_ears = static_cast<int>(a.d_ears.size());
  r.ud_ears = static_cast<int>(a.ud_ears.size());
  r.bmd_ears = static_cast<int>(a.bm.bmd_facet_ids.size());
  r.bmud_ears = static_cast<int>(a.bm.bmud_facet_ids.size());
  r.empty_spheres = a.spheres.empty_count;
  r.full_spheres = a.spheres.full_count;
  r.census = a.census;

  r.thm5_pass = r.bmd_ears >= 2 && r.bmud_ears >= 2;
  r.thm6_pass = r.bmd_ears + r.bmud_ears >= r.d + 1;
  r.thm2_pass = r.empty_spheres >= 2 && r.full_spheres >= 2;
  r.thm3_observed = r.empty_spheres >= r.d && r.full_spheres >= r.d;
  if (a.census) {
    r.census_identities_pass =
        a.census->identities_hold() && a.census->s_minus == r.d_ears && a.census->s_plus == r.ud_ears;
  }

  auto contained = [](const std::vector<int>& bm, const Triangulation& t, const EarSet& ears) {
    const auto simplex = simplex_of_facet(t);
    return std::all_of(bm.begin(), bm.end(), [&](int f) { return ears.contains(simplex.at(f)); });
  };
  r.containment_pass = contained(a.bm.bmd_facet_ids, a.tri.dt, a.d_ears) &&
                       contained(a.bm.bmud_facet_ids, a.tri.udt, a.ud_ears);

  const auto dear = ear_tuples(a.tri.dt, a.d_ears);
  const auto udear = ear_tuples(a.tri.udt, a.ud_ears);
  bool spheres_ok = true;
  auto ears_extremal = [&](const std::vector<IdTuple>& ears, SphereClass expected) {
    std::vector<VectorD> verts;
    for (const auto& e : ears) {
      verts.clear();
      for (int v : e) verts.push_back(a.points[v]);
      if (classify_sphere(circumsphere(verts), e, a.points) != expected) spheres_ok = false;
    }
  };
  ears_extremal(dear, SphereClass::Empty);
  ears_extremal(udear, SphereClass::Full);
  std::set<IdTuple> empty_sets, full_sets;
  for (const auto& rec : a.spheres.records) {
    if (rec.cls == SphereClass::Empty) empty_sets.insert(rec.vertices);
    if (rec.cls == SphereClass::Full) full_sets.insert(rec.vertices);
  }
  r.correspondence_pass = spheres_ok && empty_sets == std::set<IdTuple>(dear.begin(), dear.end()) &&
                          full_sets == std::set<IdTuple>(udear.begin(), udear.end());

  if (options.check_shellings) {
    r.lemma2_pass = shellings_end_at_ears(a, a.tri.split.lower, a.bm.bmd_facet_ids, a.tri.dt, a.d_ears) &&
                    shellings_end_at_ears(a, a.tri.split.upper, a.bm.bmud_facet_ids, a.tri.udt, a.ud_ears);
  }

  if (!r.thm5_pass) r.defects.emplace_back("thm5: fewer than two BM-ears on a side");
  if (!r.thm6_pass) r.defects.emplace_back("thm6: fewer than d+1 BM-ears");
  if (!r.thm2_pass) r.defects.emplace_back("thm2: fewer than two empty or full neighboring spheres");
  if (!r.census_identities_pass) r.defects.emplace_back("census identities fail");
  if (!r.containment_pass) r.defects.emplace_back("BM-ear that is not an ear");
  if (!r.correspondence_pass) r.defects.emplace_back("ears and extremal neighboring spheres disagree");
  if (r.lemma2_pass == false) r.defects.emplace_back("line shelling does not end at the BM-ear");
  return r;
}

InstanceRecord verify_theorems(std::span<const VectorD> points, int d, const VerifyOptions& options) {
  const auto generic = check_generic(points, d);
  if (!generic.is_generic) {
    InstanceRecord r;
    r.d = d;
    r.n = static_cast<int>(points.size());
    return r;
  }
  return verify_analysis(analyze(points, d), options);
}

namespace {

template <typename Fn>
void for_each_trial(int trials, int threads, Fn&& fn) {
  if (threads <= 0) threads = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  threads = std::min(threads, trials);
  if (threads <= 1) {
    for (int i = 0; i < trials; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < trials; i = next++) fn(i);
    });
  }
}

void dump_repro(const TrialConfig& cfg, int trial, const std::vector<VectorD>& pts) {
  if (!cfg.repro_dir) return;
  std::filesystem::create_directories(*cfg.repro_dir);
  std::ofstream out(*cfg.repro_dir / ("repro_trial_" + std::to_string(trial) + ".txt"));
  out << "# seed " << cfg.seed << " trial " << trial << '\n';
  write_points(out, pts, cfg.d);
}

InstanceRecord run_trial(const TrialConfig& cfg, int trial, const VerifyOptions& options) {
  InstanceRecord r;
  std::vector<VectorD> pts;
  try {
    pts = gen_polytope(cfg, trial);
  } catch (const GenerationFailure& e) {
    r.d = cfg.d;
    r.generation_failed = true;
    r.defects.emplace_back(e.what());
  }
  if (!r.generation_failed) {
    try {
      r = verify_analysis(analyze(pts, cfg.d), options);
    } catch (const Error& e) {
      r = InstanceRecord{};
      r.d = cfg.d;
      r.n = static_cast<int>(pts.size());
      r.defects.emplace_back(std::string("pipeline error: ") + e.what());
    }
    if (r.has_defect()) dump_repro(cfg, trial, pts);
  }
  r.trial = trial;
  r.seed = trial_seed(cfg, trial);
  return r;
}

void aggregate(TheoremReport& rep) {
  for (const auto& r : rep.records) {
    if (r.generation_failed) {
      ++rep.generation_failures;
      continue;
    }
    ++rep.instances;
    rep.thm5_pass += r.thm5_pass;
    rep.thm6_pass += r.thm6_pass;
    rep.thm2_pass += r.thm2_pass;
    rep.census_pass += r.census_identities_pass;
    rep.containment_pass += r.containment_pass;
    rep.correspondence_pass += r.correspondence_pass;
    rep.lemma2_pass += r.lemma2_pass.value_or(false);
    rep.thm3_observed += r.thm3_observed;
    rep.defect_instances += r.has_defect();
    if (r.is_generic && (!rep.min_bmd || r.bmd_ears < *rep.min_bmd)) rep.min_bmd = r.bmd_ears;
  }
}

}  // namespace

TheoremReport run_batch(const TrialConfig& cfg, const VerifyOptions& options) {
  validate(cfg);
  TheoremReport rep;
  rep.config = cfg;
  rep.records.resize(static_cast<std::size_t>(cfg.trials));
  for_each_trial(cfg.trials, cfg.threads, [&](int i) { rep.records[i] = run_trial(cfg, i, options); });
  aggregate(rep);
  return rep;
}

TheoremReport search_min_bm_ears(const TrialConfig& cfg) {
  validate(cfg);
  if (cfg.d < 3) throw InputError("search_min_bm_ears: d must be at least 3");
  TheoremReport rep;
  rep.config = cfg;
  rep.records.resize(static_cast<std::size_t>(cfg.trials));
  const VerifyOptions quick{.check_shellings = false};
  for_each_trial(cfg.trials, cfg.threads, [&](int i) { rep.records[i] = run_trial(cfg, i, quick); });

  for (const auto& r : rep.records) {
    if (!r.is_generic) continue;
    if (!rep.best_trial) {
      rep.best_trial = r.trial;
      continue;
    }
    const auto& b = rep.records[*rep.best_trial];
    if (r.bmd_ears < b.bmd_ears || (r.bmd_ears == b.bmd_ears && r.d_ears - r.bmd_ears > b.d_ears - b.bmd_ears)) {
      rep.best_trial = r.trial;
    }
  }
  if (rep.best_trial) {
    rep.best_points = gen_polytope(cfg, *rep.best_trial);
    rep.records[*rep.best_trial] = run_trial(cfg, *rep.best_trial, VerifyOptions{});
  }
  aggregate(rep);
  return rep;
}

}  // namespace esph
