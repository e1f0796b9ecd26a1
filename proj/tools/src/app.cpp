#include "esph/cli/app.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "esph/cli/report.hpp"
#include "esph/cli/svg.hpp"
#include "esph/errors.hpp"
#include "esph/pointfile.hpp"

namespace esph::cli {

namespace {

PointSet load(const std::string& path) {
  if (path == "-") return parse_points(std::cin);
  return read_points(path);
}

// Default seed: ESPH_SEED when it holds a decimal integer, else 1.
std::uint64_t default_seed(std::ostream& err) {
  const char* env = std::getenv("ESPH_SEED");
  if (env == nullptr || *env == '\0') return 1;
  std::uint64_t v = 0;
  const char* end = env + std::char_traits<char>::length(env);
  const auto [ptr, ec] = std::from_chars(env, end, v);
  if (ec != std::errc() || ptr != end) {
    err << "warning: ignoring malformed ESPH_SEED=\"" << env << "\"\n";
    return 1;
  }
  return v;
}

int require_generic(const PointSet& ps, std::ostream& err) {
  const auto g = check_generic(ps.points, ps.dim);
  if (g.is_generic) return kOk;
  err << "input is not a generic point set in convex position";
  if (!g.notes.empty()) err << ": " << g.notes.front();
  if (!g.violations.empty()) {
    err << " (cospherical:";
    for (int v : g.violations.front()) err << ' ' << v;
    err << ')';
  }
  err << '\n';
  return kNotGeneric;
}

void report_defects(const InstanceRecord& r, std::ostream& err) {
  for (const auto& d : r.defects) err << "theorem violation: " << d << '\n';
}

struct Options {
  std::string file = "-";
  std::string output;
  std::vector<int> target;
  std::string group = "lower";
  int dim = 0;
  int verts = 0;
  int trials = 1;
  int n_min = 0;
  int n_max = 0;
  int threads = 0;
  std::int64_t denominator_bound = 1'000'000;
  std::uint64_t seed = 1;
  std::string repro_dir;
};

int cmd_check(const Options& o, std::ostream& out) {
  const auto ps = load(o.file);
  const auto g = check_generic(ps.points, ps.dim);
  out << dump(genericity_json(g));
  return g.is_generic ? kOk : kNotGeneric;
}

int cmd_analyze(const Options& o, std::ostream& out, std::ostream& err) {
  const auto ps = load(o.file);
  if (int rc = require_generic(ps, err)) return rc;
  const Analysis a = analyze(ps.points, ps.dim);
  const InstanceRecord r = verify_analysis(a);
  out << dump(report_json(a, r));
  report_defects(r, err);
  return r.has_defect() ? kTheoremViolation : kOk;
}

int cmd_census2d(const Options& o, std::ostream& out, std::ostream& err) {
  const auto ps = load(o.file);
  if (ps.dim != 2) {
    err << "census2d needs a planar point set\n";
    return kUsage;
  }
  if (int rc = require_generic(ps, err)) return rc;
  const Analysis a = analyze(ps.points, 2);
  const auto cycle = boundary_cycle(a.tri.dt);
  std::vector<VectorD> polygon;
  for (int v : cycle) polygon.push_back(ps.points[v]);

  Json j;
  j["n"] = a.census->n;
  j["boundary_order"] = cycle;
  j["census2d"] = census_json(*a.census);
  j["identities_hold"] = a.census->identities_hold();
  j["radii"] = radii_json(curvature_radii(polygon));
  out << dump(j);
  if (!a.census->identities_hold()) {
    err << "theorem violation: census identities fail\n";
    return kTheoremViolation;
  }
  return kOk;
}

int cmd_shelling(const Options& o, std::ostream& out, std::ostream& err) {
  const auto ps = load(o.file);
  if (int rc = require_generic(ps, err)) return rc;
  const auto tri = delaunay_triangulations(ps.points, ps.dim);
  const bool lower = o.group == "lower";
  const auto& group = lower ? tri.split.lower : tri.split.upper;
  const auto& t = lower ? tri.dt : tri.udt;

  IdTuple target = o.target;
  std::sort(target.begin(), target.end());
  const auto it = std::find_if(group.begin(), group.end(),
                               [&](int f) { return tri.lifted.facets[f].vertex_ids == target; });
  if (it == group.end()) {
    err << "target is not a simplex of the " << (lower ? "Delaunay" : "upper Delaunay") << " triangulation\n";
    return kUsage;
  }
  const auto order = line_shelling(tri.lifted, group, *it);
  const auto check = validate_shelling(order, t);

  Json j;
  j["group"] = o.group;
  j["target"] = target;
  Json seq = Json::array();
  for (int f : order.facet_order) seq.push_back(tri.lifted.facets[f].vertex_ids);
  j["order"] = std::move(seq);
  j["valid"] = check.ok;
  out << dump(j);
  if (!check.ok || order.facet_order.back() != *it) {
    err << "theorem violation: invalid line shelling";
    if (!check.reason.empty()) err << ": " << check.reason;
    err << '\n';
    return kTheoremViolation;
  }
  return kOk;
}

int cmd_gen(const Options& o, std::ostream& out) {
  TrialConfig cfg;
  cfg.d = o.dim;
  cfg.n_min = cfg.n_max = o.verts;
  cfg.seed = o.seed;
  cfg.denominator_bound = o.denominator_bound;
  const auto pts = gen_polytope(cfg, 0);
  out << "# esph gen --dim " << o.dim << " --verts " << o.verts << " --seed " << o.seed << '\n';
  write_points(out, pts, o.dim);
  return kOk;
}

int cmd_search(const Options& o, std::ostream& out, std::ostream& err) {
  TrialConfig cfg;
  cfg.d = o.dim;
  cfg.n_min = o.n_min > 0 ? o.n_min : o.dim + 3;
  cfg.n_max = o.n_max > 0 ? o.n_max : std::max(cfg.n_min, o.dim + 7);
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.denominator_bound = o.denominator_bound;
  cfg.threads = o.threads;
  if (!o.repro_dir.empty()) cfg.repro_dir = o.repro_dir;
  const auto rep = search_min_bm_ears(cfg);
  out << dump(theorem_report_json(rep));
  if (rep.defect_instances > 0) {
    err << "theorem violation on " << rep.defect_instances << " instance(s)\n";
    return kTheoremViolation;
  }
  return kOk;
}

int cmd_svg(const Options& o, std::ostream& out, std::ostream& err) {
  const auto ps = load(o.file);
  if (ps.dim != 2) {
    err << "svg needs a planar point set\n";
    return kUsage;
  }
  if (int rc = require_generic(ps, err)) return rc;
  const std::string svg = render_svg(analyze(ps.points, 2));
  if (o.output.empty()) {
    out << svg;
  } else {
    std::ofstream f(o.output);
    if (!(f << svg)) {
      err << "cannot write " << o.output << '\n';
      return kUsage;
    }
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  o.seed = default_seed(err);

  CLI::App app{"Ears, BM-ears and extremal spheres of convex polytopes"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "Genericity and convex-position report");
  auto* analyze_cmd = app.add_subcommand("analyze", "Full pipeline; prints the JSON report");
  auto* census = app.add_subcommand("census2d", "Triangle census of a convex polygon");
  auto* shelling = app.add_subcommand("shelling", "Line shelling ending at a BM-ear");
  auto* gen = app.add_subcommand("gen", "Random generic polytope as a point file");
  auto* search = app.add_subcommand("search", "Search for instances with few Delaunay BM-ears");
  auto* svg = app.add_subcommand("svg", "Planar figure with extremal circles");

  for (auto* sub : {check, analyze_cmd, census, shelling, svg}) {
    sub->add_option("file", o.file, "Point file, - for standard input")->required();
  }
  shelling->add_option("--target", o.target, "Vertex ids of the target simplex, comma separated")
      ->required()
      ->delimiter(',');
  shelling->add_option("--group", o.group, "lower or upper")->check(CLI::IsMember({"lower", "upper"}));
  svg->add_option("-o,--output", o.output, "Write to this file instead of standard output");

  for (auto* sub : {gen, search}) {
    sub->add_option("--dim", o.dim, "Dimension")->required()->check(CLI::Range(2, 1000));
    sub->add_option("--seed", o.seed, "Seed (default: ESPH_SEED or 1)");
    sub->add_option("--denominator-bound", o.denominator_bound, "Coordinate denominator bound")
        ->check(CLI::PositiveNumber);
  }
  gen->add_option("--verts", o.verts, "Number of vertices")->required();
  search->add_option("--trials", o.trials, "Number of trials")->required()->check(CLI::PositiveNumber);
  search->add_option("--n-min", o.n_min, "Smallest vertex count (default dim+3)");
  search->add_option("--n-max", o.n_max, "Largest vertex count (default dim+7)");
  search->add_option("--threads", o.threads, "Worker threads, 0 for all cores");
  search->add_option("--repro-dir", o.repro_dir, "Directory for point files of defective instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(o, out);
    if (*analyze_cmd) return cmd_analyze(o, out, err);
    if (*census) return cmd_census2d(o, out, err);
    if (*shelling) return cmd_shelling(o, out, err);
    if (*gen) return cmd_gen(o, out);
    if (*search) return cmd_search(o, out, err);
    if (*svg) return cmd_svg(o, out, err);
  } catch (const ParseError& e) {
    err << e.what() << '\n';
    return kParse;
  } catch (const NotABMEar& e) {
    err << "not a BM-ear: " << e.what() << '\n';
    return kNotABMEar;
  } catch (const NotInConvexPosition& e) {
    err << e.what() << '\n';
    return kNotGeneric;
  } catch (const GenericityViolation& e) {
    err << e.what() << '\n';
    return kNotGeneric;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace esph::cli
