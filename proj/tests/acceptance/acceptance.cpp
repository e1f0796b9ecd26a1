// Acceptance run: one PASS/FAIL line per criterion, then a second pass over
// criteria 1-10 to compare every emitted JSON document byte for byte.
//
// ESPH_SEARCH_TRIALS overrides the trial budget of the minimal BM-ear search.
// ESPH_ACCEPTANCE_ARCHIVE names the file that receives the full search
// archive when the search finds no instance with a strict gap.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "esph/cli/report.hpp"
#include "esph/harness.hpp"
#include "esph/hull.hpp"
#include "oracles.hpp"

namespace {

using namespace esph;
using cli::Json;

constexpr int kCriteria = 10;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Run {
  std::array<Outcome, kCriteria> outcomes;
  std::vector<std::string> transcript;
};

class Criterion {
 public:
  explicit Criterion(Outcome& out) : out_(out) {}

  // Records the first failure message; later ones only count.
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (out_.pass) first_ = what;
    out_.pass = false;
    ++failures_;
  }

  void finish(const std::string& summary) {
    out_.detail = summary;
    if (!out_.pass) out_.detail += "; " + std::to_string(failures_) + " failure(s), first: " + first_;
  }

 private:
  Outcome& out_;
  std::string first_;
  int failures_ = 0;
};

TrialConfig config(int d, int n_min, int n_max, std::uint64_t seed, int trials) {
  TrialConfig cfg;
  cfg.d = d;
  cfg.n_min = n_min;
  cfg.n_max = n_max;
  cfg.seed = seed;
  cfg.trials = trials;
  return cfg;
}

// Trials that exhaust the rejection budget are skipped; the batch keeps
// drawing trial indices until it has `wanted` instances.
template <class Fn>
int for_instances(const TrialConfig& cfg, int wanted, Fn&& fn) {
  int failures = 0;
  int got = 0;
  for (int t = 0; got < wanted; ++t) {
    std::vector<VectorD> pts;
    try {
      pts = gen_polytope(cfg, t);
    } catch (const GenerationFailure&) {
      ++failures;
      continue;
    }
    if (fn(t, pts)) ++got;
  }
  return failures;
}

std::string skipped(int failures) {
  return failures ? ", " + std::to_string(failures) + " generation failures skipped" : "";
}

std::string label(int d, int trial) { return "d=" + std::to_string(d) + " trial " + std::to_string(trial); }

std::set<IdTuple> as_set(const std::vector<IdTuple>& v) { return {v.begin(), v.end()}; }

bool census_families_hold(const Census2D& c) {
  const int n = c.n;
  return c.s_minus - c.t_minus == 2 && c.s_plus - c.t_plus == 2 &&
         c.s_minus + c.t_minus + c.u_minus == n - 2 && c.s_plus + c.t_plus + c.u_plus == n - 2 &&
         2 * c.s_minus + c.u_minus == n && 2 * c.s_plus + c.u_plus == n;
}

bool partitions_hull(const Analysis& a) {
  const auto hull = convex_hull(a.points, a.d);
  const Scalar v = hull_volume(hull);
  return triangulation_volume(a.tri.dt) == v && triangulation_volume(a.tri.udt) == v;
}

std::string report_of(const Analysis& a, const VerifyOptions& opts = {}) {
  return cli::dump(cli::report_json(a, verify_analysis(a, opts)));
}

// Criteria 1-3.
void planar_and_oracle_checks(Run& run) {
  Criterion c1(run.outcomes[0]);
  Criterion c2(run.outcomes[1]);
  Criterion c3(run.outcomes[2]);
  const VerifyOptions no_shellings{false};
  int volume_checks = 0;

  const int failed1 = for_instances(config(2, 4, 40, 101, 1), 500, [&](int t, const std::vector<VectorD>& pts) {
    const auto a = analyze(pts, 2);
    c1.expect(a.census && census_families_hold(*a.census), label(2, t));
    c3.expect(partitions_hull(a), "criterion 1 " + label(2, t));
    ++volume_checks;
    run.transcript.push_back(report_of(a, no_shellings));
    return true;
  });
  c1.finish("500 polygons, n in [4, 40]" + skipped(failed1));

  int failed2 = 0;
  auto compare = [&](int d, int n_max, std::uint64_t seed, int trials) {
    failed2 += for_instances(config(d, d + 2, n_max, seed, 1), trials, [&](int t, const std::vector<VectorD>& pts) {
      const auto a = analyze(pts, d);
      c2.expect(as_set(a.tri.dt.simplices) == oracle::delaunay_simplices(pts, d, false), "DT " + label(d, t));
      c2.expect(as_set(a.tri.udt.simplices) == oracle::delaunay_simplices(pts, d, true), "UDT " + label(d, t));
      c3.expect(partitions_hull(a), "criterion 2 " + label(d, t));
      ++volume_checks;
      run.transcript.push_back(report_of(a, no_shellings));
      return true;
    });
  };
  compare(2, 12, 102, 100);
  compare(3, 10, 103, 50);
  c2.finish("100 instances d=2 n<=12, 50 instances d=3 n<=10" + skipped(failed2));
  c3.finish(std::to_string(volume_checks) + " instances, DT and UDT volumes equal the hull volume");
}

// Criteria 4-8 on one batch.
void theorem_batch(Run& run) {
  Criterion c4(run.outcomes[3]);
  Criterion c5(run.outcomes[4]);
  Criterion c6(run.outcomes[5]);
  Criterion c7(run.outcomes[6]);
  Criterion c8(run.outcomes[7]);
  int instances = 0;
  int shellings = 0;
  int thm3 = 0;
  int failures = 0;

  struct Slice {
    int d, n_min, n_max, trials;
    std::uint64_t seed;
  };
  for (const Slice& s : {Slice{2, 4, 20, 70, 104}, Slice{3, 5, 20, 70, 105}, Slice{4, 6, 12, 60, 106}}) {
    const auto cfg = config(s.d, s.n_min, s.n_max, s.seed, 1);
    failures += for_instances(cfg, s.trials, [&](int t, const std::vector<VectorD>& pts) {
      const int d = s.d;
      const auto a = analyze(pts, d);
      const std::string where = label(d, t);
      ++instances;

      const auto bmd = a.bm.bmd_facet_ids.size();
      const auto bmud = a.bm.bmud_facet_ids.size();
      c4.expect(bmd >= 2 && bmud >= 2, where);
      c5.expect(static_cast<int>(bmd + bmud) >= d + 1, where);

      const auto dt_ears = ear_tuples(a.tri.dt, a.d_ears);
      const auto udt_ears = ear_tuples(a.tri.udt, a.ud_ears);

      auto side = [&](const std::vector<int>& group, const std::vector<int>& bm, const Triangulation& tri,
                      const EarSet& ears, const char* name) {
        for (int f : bm) {
          const auto pos = std::find(tri.source_facets.begin(), tri.source_facets.end(), f);
          const int simplex = static_cast<int>(pos - tri.source_facets.begin());
          c7.expect(pos != tri.source_facets.end() && ears.contains(simplex),
                    std::string(name) + " BM-ear outside the ears, " + where);
          const auto order = line_shelling(a.tri.lifted, group, f);
          ++shellings;
          const bool ends_at_f = !order.facet_order.empty() && order.facet_order.back() == f;
          c6.expect(validate_shelling(order, tri).ok && ends_at_f && ears.contains(simplex),
                    std::string(name) + " shelling, " + where);
        }
      };
      side(a.tri.split.lower, a.bm.bmd_facet_ids, a.tri.dt, a.d_ears, "lower");
      side(a.tri.split.upper, a.bm.bmud_facet_ids, a.tri.udt, a.ud_ears, "upper");

      auto ear_spheres = [&](const std::vector<IdTuple>& ears, SphereClass want) {
        for (const auto& e : ears) {
          std::vector<VectorD> v;
          for (int i : e) v.push_back(pts[i]);
          c7.expect(classify_sphere(circumsphere(v), e, pts) == want, "ear sphere, " + where);
        }
      };
      ear_spheres(dt_ears, SphereClass::Empty);
      ear_spheres(udt_ears, SphereClass::Full);
      const auto dt_set = as_set(dt_ears);
      const auto udt_set = as_set(udt_ears);
      for (const auto& rec : a.spheres.records) {
        if (rec.cls == SphereClass::Empty) c7.expect(dt_set.count(rec.vertices) > 0, "empty sphere, " + where);
        if (rec.cls == SphereClass::Full) c7.expect(udt_set.count(rec.vertices) > 0, "full sphere, " + where);
      }

      c8.expect(a.spheres.empty_count >= 2 && a.spheres.full_count >= 2, where);
      if (a.spheres.empty_count >= d && a.spheres.full_count >= d) ++thm3;

      const auto record = verify_analysis(a);
      c4.expect(!record.has_defect(), "library verification, " + where);
      run.transcript.push_back(cli::dump(cli::report_json(a, record)));
      return true;
    });
  }
  const std::string batch = std::to_string(instances) + " instances across d=2,3,4" + skipped(failures);
  c4.finish(batch);
  c5.finish(batch);
  c6.finish(batch + ", " + std::to_string(shellings) + " shellings");
  c7.finish(batch);
  c8.finish(batch + "; at least d empty and d full spheres on " + std::to_string(thm3) + " of " +
            std::to_string(instances) + " (recorded only)");
}

// Criterion 9.
void curvature_extrema(Run& run) {
  Criterion c9(run.outcomes[8]);
  int tried = 0;
  const int failed = for_instances(config(2, 4, 40, 109, 1), 100, [&](int t, const std::vector<VectorD>& pts) {
    ++tried;
    const auto r = curvature_radii(pts);
    if (!r.condition_holds) return false;
    c9.expect(r.local_min_count >= 2 && r.local_max_count >= 2, label(2, t));
    run.transcript.push_back(cli::dump(cli::radii_json(r)));
    return true;
  });
  c9.finish("100 polygons with the condition, out of " + std::to_string(tried) + " generated" + skipped(failed));
}

int search_budget() {
  if (const char* env = std::getenv("ESPH_SEARCH_TRIALS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
    std::cerr << "ignoring ESPH_SEARCH_TRIALS=" << env << "\n";
  }
  return 100000;
}

// Criterion 10.
void min_bm_search(Run& run) {
  Criterion c10(run.outcomes[9]);
  auto cfg = config(3, 6, 10, 7, search_budget());
  cfg.threads = 0;
  const auto rep = search_min_bm_ears(cfg);
  run.transcript.push_back(cli::dump(cli::theorem_report_json(rep)));

  bool gap = false;
  std::string summary = std::to_string(rep.instances) + " trials";
  if (rep.best_trial) {
    const auto& best = rep.records[static_cast<std::size_t>(*rep.best_trial)];
    gap = best.bmd_ears < best.d_ears;
    summary += ", best trial " + std::to_string(best.trial) + " with |BMD| = " + std::to_string(best.bmd_ears) +
               " and |D-ears| = " + std::to_string(best.d_ears);
    summary += best.bmd_ears == 2 ? " (|BMD| = 2 reached)" : " (|BMD| = 2 not reached)";
    const auto again = verify_theorems(rep.best_points, 3);
    c10.expect(again.bmd_ears == best.bmd_ears && again.d_ears == best.d_ears,
               "best instance does not re-verify from its coordinates");
  }
  c10.expect(gap, "no instance with |BMD| < |D-ears|");
  c10.expect(rep.defect_instances == 0, std::to_string(rep.defect_instances) + " defective instances");

  if (!gap) {
    const char* env = std::getenv("ESPH_ACCEPTANCE_ARCHIVE");
    const std::string path = env ? env : "esph_search_archive.json";
    Json archive = Json::object();
    archive["report"] = cli::theorem_report_json(rep);
    Json trials = Json::array();
    for (const auto& r : rep.records) trials.push_back(cli::record_json(r));
    archive["trials"] = std::move(trials);
    std::ofstream(path) << cli::dump(archive);
    summary += "; archive written to " + path;
  }
  c10.finish(summary);
}

void print_line(int criterion, const Outcome& o, double seconds) {
  std::printf("%s criterion %d: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", criterion, o.detail.c_str(), seconds);
  std::fflush(stdout);
}

Run run_all(bool print) {
  using Clock = std::chrono::steady_clock;
  Run run;
  auto step = [&](auto&& fn, int first, int last) {
    const auto start = Clock::now();
    fn(run);
    const double s = std::chrono::duration<double>(Clock::now() - start).count();
    if (!print) return;
    for (int c = first; c <= last; ++c) print_line(c, run.outcomes[static_cast<std::size_t>(c - 1)], s);
  };
  step(planar_and_oracle_checks, 1, 3);
  step(theorem_batch, 4, 8);
  step(curvature_extrema, 9, 9);
  step(min_bm_search, 10, 10);
  return run;
}

}  // namespace

int main() {
  try {
    const Run first = run_all(true);
    const Run second = run_all(false);

    Outcome determinism;
    std::size_t mismatches = 0;
    std::size_t first_mismatch = 0;
    const std::size_t common = std::min(first.transcript.size(), second.transcript.size());
    for (std::size_t i = common; i-- > 0;) {
      if (first.transcript[i] != second.transcript[i]) {
        ++mismatches;
        first_mismatch = i;
      }
    }
    determinism.pass = mismatches == 0 && first.transcript.size() == second.transcript.size();
    for (int c = 0; c < kCriteria; ++c) {
      if (first.outcomes[c].pass != second.outcomes[c].pass) determinism.pass = false;
    }
    determinism.detail = std::to_string(first.transcript.size()) + " JSON documents compared";
    if (mismatches) determinism.detail += ", " + std::to_string(mismatches) + " differ, first at #" +
                                          std::to_string(first_mismatch);
    std::printf("%s criterion 11: %s\n", determinism.pass ? "PASS" : "FAIL", determinism.detail.c_str());

    bool all = determinism.pass;
    for (const auto& o : first.outcomes) all = all && o.pass;
    return all ? 0 : 1;
  } catch (const std::exception& e) {
    std::printf("FAIL acceptance aborted: %s\n", e.what());
    return 1;
  }
}
