#include "esph/cli/report.hpp"

#include <algorithm>

namespace esph::cli {

namespace {

Json tuples(std::vector<IdTuple> ts) {
  for (auto& t : ts) std::sort(t.begin(), t.end());
  std::sort(ts.begin(), ts.end());
  return Json(ts);
}

Json facet_tuples(const HullComplex& lifted, const std::vector<int>& facets) {
  std::vector<IdTuple> ts;
  ts.reserve(facets.size());
  for (int f : facets) ts.push_back(lifted.facets[f].vertex_ids);
  return tuples(std::move(ts));
}

Json counts_json(const InstanceRecord& r) {
  Json c;
  c["dt_simplices"] = r.dt_simplices;
  c["udt_simplices"] = r.udt_simplices;
  c["d_ears"] = r.d_ears;
  c["ud_ears"] = r.ud_ears;
  c["bmd_ears"] = r.bmd_ears;
  c["bmud_ears"] = r.bmud_ears;
  c["empty_neighboring_spheres"] = r.empty_spheres;
  c["full_neighboring_spheres"] = r.full_spheres;
  return c;
}

Json theorems_json(const InstanceRecord& r) {
  Json t;
  t["thm5_pass"] = r.thm5_pass;
  t["thm6_pass"] = r.thm6_pass;
  t["thm2_pass"] = r.thm2_pass;
  t["census_identities_pass"] = r.census_identities_pass;
  t["thm3_observed"] = r.thm3_observed;
  return t;
}

}  // namespace

Json census_json(const Census2D& c) {
  Json j;
  j["s_minus"] = c.s_minus;
  j["t_minus"] = c.t_minus;
  j["u_minus"] = c.u_minus;
  j["s_plus"] = c.s_plus;
  j["t_plus"] = c.t_plus;
  j["u_plus"] = c.u_plus;
  return j;
}

Json report_json(const Analysis& a, const InstanceRecord& r) {
  Json j;
  j["dim"] = a.d;
  j["n"] = static_cast<int>(a.points.size());
  j["generic"] = r.is_generic;
  j["counts"] = counts_json(r);
  if (a.d == 2 && a.census) j["census2d"] = census_json(*a.census);
  j["theorems"] = theorems_json(r);
  j["ears"] = {{"delaunay", tuples(ear_tuples(a.tri.dt, a.d_ears))},
               {"upper_delaunay", tuples(ear_tuples(a.tri.udt, a.ud_ears))}};
  j["bm_ears"] = {{"delaunay", facet_tuples(a.tri.lifted, a.bm.bmd_facet_ids)},
                  {"upper_delaunay", facet_tuples(a.tri.lifted, a.bm.bmud_facet_ids)}};
  return j;
}

Json genericity_json(const GenericityReport& g) {
  Json j;
  j["dim"] = g.d;
  j["n"] = g.n;
  j["generic"] = g.is_generic;
  j["simplex"] = g.is_simplex;
  j["full_dimensional"] = g.full_dimensional;
  j["convex_position"] = g.in_convex_position;
  j["simplicial"] = g.simplicial;
  j["cospherical"] = tuples(g.violations);
  j["notes"] = g.notes;
  return j;
}

Json radii_json(const RadiiReport& r) {
  Json j;
  j["condition_holds"] = r.condition_holds;
  j["local_min_count"] = r.local_min_count;
  j["local_max_count"] = r.local_max_count;
  Json radii = Json::array();
  for (const auto& q : r.radii_sq) radii.push_back(to_string(q));
  j["radii_sq"] = std::move(radii);
  return j;
}

Json record_json(const InstanceRecord& r) {
  Json j;
  j["trial"] = r.trial;
  j["seed"] = r.seed;
  j["dim"] = r.d;
  j["n"] = r.n;
  j["generic"] = r.is_generic;
  j["generation_failed"] = r.generation_failed;
  j["counts"] = counts_json(r);
  if (r.census) j["census2d"] = census_json(*r.census);
  j["theorems"] = theorems_json(r);
  j["containment_pass"] = r.containment_pass;
  j["correspondence_pass"] = r.correspondence_pass;
  j["lemma2_pass"] = r.lemma2_pass ? Json(*r.lemma2_pass) : Json(nullptr);
  j["defects"] = r.defects;
  return j;
}

Json points_json(std::span<const VectorD> points) {
  Json out = Json::array();
  for (const auto& p : points) {
    Json row = Json::array();
    for (const auto& x : p) row.push_back(to_string(x));
    out.push_back(std::move(row));
  }
  return out;
}

Json theorem_report_json(const TheoremReport& rep) {
  Json j;
  const auto& c = rep.config;
  j["config"] = {{"dim", c.d},
                 {"n_min", c.n_min},
                 {"n_max", c.n_max},
                 {"seed", c.seed},
                 {"trials", c.trials},
                 {"coordinate_denominator_bound", c.denominator_bound}};
  j["instances"] = rep.instances;
  j["generation_failures"] = rep.generation_failures;
  j["pass"] = {{"thm5", rep.thm5_pass},
               {"thm6", rep.thm6_pass},
               {"thm2", rep.thm2_pass},
               {"census_identities", rep.census_pass},
               {"containment", rep.containment_pass},
               {"correspondence", rep.correspondence_pass},
               {"lemma2", rep.lemma2_pass}};
  j["thm3_observed"] = rep.thm3_observed;
  j["defect_instances"] = rep.defect_instances;
  j["min_bmd"] = rep.min_bmd ? Json(*rep.min_bmd) : Json(nullptr);
  if (rep.best_trial) {
    Json best = record_json(rep.records[*rep.best_trial]);
    best["points"] = points_json(rep.best_points);
    j["best"] = std::move(best);
  }
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace esph::cli
