#pragma once

// Seeded generation of generic convex polytopes, per-instance verification of
// the ear / sphere theorems, batches and the minimal-BM-ear search.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "esph/delaunay.hpp"
#include "esph/ears.hpp"
#include "esph/errors.hpp"
#include "esph/polygon2d.hpp"
#include "esph/shelling.hpp"
#include "esph/spheres.hpp"

namespace esph {

struct TrialConfig {
  int d = 2;
  int n_min = 4;
  int n_max = 4;
  std::uint64_t seed = 1;
  int trials = 1;
  std::int64_t denominator_bound = 1'000'000;
  int max_rejections = 1000;
  // Worker threads for batches and searches; 0 means hardware concurrency.
  // Results never depend on this value.
  int threads = 1;
  // Instances with a proved-theorem defect are written here as point files.
  std::optional<std::filesystem::path> repro_dir;
};

// Throws InputError unless d >= 2, d + 2 <= n_min <= n_max, trials >= 1,
// denominator_bound >= 1 and max_rejections >= 0.
void validate(const TrialConfig& cfg);

class GenerationFailure : public Error {
 public:
  using Error::Error;
};

// Seed of trial `trial_index`.
std::uint64_t trial_seed(const TrialConfig& cfg, int trial_index);

// n generic points in convex position near the unit sphere, every
// coordinate a multiple of 1/denominator_bound. A pure function of
// (cfg.d, cfg.n_min, cfg.n_max, cfg.seed, cfg.denominator_bound,
// cfg.max_rejections, trial_index). For d = 2 the vertices come in
// counterclockwise order. Throws GenerationFailure after max_rejections
// rejected candidates.
std::vector<VectorD> gen_polytope(const TrialConfig& cfg, int trial_index);

// Every intermediate of the pipeline on one instance.
struct Analysis {
  int d = 0;
  std::vector<VectorD> points;
  DelaunayPair tri;
  EarSet d_ears;
  EarSet ud_ears;
  BMEarReport bm;
  RidgeSphereCensus spheres;
  std::optional<Census2D> census;
};

// Requires generic input; pipeline errors propagate.
Analysis analyze(std::span<const VectorD> points, int d, std::uint64_t hull_seed = kDefaultHullSeed);

// Vertex indices of a d = 2 triangulation in boundary order, starting at 0.
std::vector<int> boundary_cycle(const Triangulation& dt);

// Vertex tuple of every ear simplex, in simplex order.
std::vector<IdTuple> ear_tuples(const Triangulation& t, const EarSet& ears);

struct InstanceRecord {
  int trial = -1;
  std::uint64_t seed = 0;
  int d = 0;
  int n = 0;
  bool is_generic = false;
  bool generation_failed = false;

  int dt_simplices = 0;
  int udt_simplices = 0;
  int d_ears = 0;
  int ud_ears = 0;
  int bmd_ears = 0;
  int bmud_ears = 0;
  int empty_spheres = 0;
  int full_spheres = 0;
  std::optional<Census2D> census;

  bool census_identities_pass = true;  // true when d != 2
  bool thm5_pass = false;
  bool thm6_pass = false;
  bool thm2_pass = false;
  bool containment_pass = false;
  bool correspondence_pass = false;
  std::optional<bool> lemma2_pass;  // unset when shellings are not checked
  bool thm3_observed = false;

  // Proved results that failed on this instance; an observation of
  // thm3_observed = false is not a defect.
  std::vector<std::string> defects;
  bool has_defect() const noexcept { return !defects.empty(); }
};

struct VerifyOptions {
  bool check_shellings = true;
};

InstanceRecord verify_theorems(std::span<const VectorD> points, int d,
                               const VerifyOptions& options = {});
InstanceRecord verify_analysis(const Analysis& a, const VerifyOptions& options = {});

struct TheoremReport {
  TrialConfig config;
  std::vector<InstanceRecord> records;  // by trial index

  int instances = 0;
  int generation_failures = 0;
  int thm5_pass = 0;
  int thm6_pass = 0;
  int thm2_pass = 0;
  int census_pass = 0;
  int containment_pass = 0;
  int correspondence_pass = 0;
  int lemma2_pass = 0;
  int thm3_observed = 0;
  int defect_instances = 0;
  std::optional<int> min_bmd;

  std::optional<int> best_trial;  // search only
  std::vector<VectorD> best_points;
};

// Generates and verifies every trial.
TheoremReport run_batch(const TrialConfig& cfg, const VerifyOptions& options = {});

// Minimizes |BMD|, breaking ties by the largest |D-ears| - |BMD| and then the
// lowest trial index. Requires d >= 3. Shellings are checked only on the
// best instance.
TheoremReport search_min_bm_ears(const TrialConfig& cfg);

}  // namespace esph
