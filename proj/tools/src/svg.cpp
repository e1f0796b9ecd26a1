#include "esph/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "esph/errors.hpp"

namespace esph::cli {

namespace {

constexpr double kSize = 800.0;
constexpr double kMargin = 0.05 * kSize;

struct Frame {
  double min_x = 0, max_y = 0, scale = 1, off_x = 0, off_y = 0;

  double x(double v) const { return off_x + (v - min_x) * scale; }
  double y(double v) const { return off_y + (max_y - v) * scale; }
};

Frame fit(std::span<const VectorD> points) {
  double lo_x = points[0][0].get_d(), hi_x = lo_x;
  double lo_y = points[0][1].get_d(), hi_y = lo_y;
  for (const auto& p : points) {
    lo_x = std::min(lo_x, p[0].get_d());
    hi_x = std::max(hi_x, p[0].get_d());
    lo_y = std::min(lo_y, p[1].get_d());
    hi_y = std::max(hi_y, p[1].get_d());
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-300});
  Frame f;
  f.min_x = lo_x;
  f.max_y = hi_y;
  f.scale = (kSize - 2 * kMargin) / span;
  f.off_x = kMargin + ((kSize - 2 * kMargin) - (hi_x - lo_x) * f.scale) / 2;
  f.off_y = kMargin + ((kSize - 2 * kMargin) - (hi_y - lo_y) * f.scale) / 2;
  return f;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string render_svg(const Analysis& a) {
  if (a.d != 2) throw InputError("svg output needs a planar point set");
  const Frame f = fit(a.points);
  auto px = [&](int v) { return num(f.x(a.points[v][0].get_d())); };
  auto py = [&](int v) { return num(f.y(a.points[v][1].get_d())); };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 800\" width=\"800\" height=\"800\">\n";
  s += "  <style>\n"
       "    .hull { fill: #f6f6f6; stroke: #222; stroke-width: 2; }\n"
       "    .dt-edge { stroke: #888; stroke-width: 1; }\n"
       "    .sphere { fill: none; stroke-width: 1.5; }\n"
       "    .empty { stroke: #1f77b4; }\n"
       "    .full { stroke: #d62728; }\n"
       "    .ear { stroke-width: 3; }\n"
       "    .vertex { fill: #222; }\n"
       "  </style>\n";

  s += "  <polygon class=\"hull\" points=\"";
  bool first = true;
  for (int v : boundary_cycle(a.tri.dt)) {
    if (!first) s += ' ';
    first = false;
    s += px(v) + "," + py(v);
  }
  s += "\"/>\n";

  std::set<std::pair<int, int>> edges;
  for (const auto& t : a.tri.dt.simplices) {
    edges.insert({t[0], t[1]});
    edges.insert({t[0], t[2]});
    edges.insert({t[1], t[2]});
  }
  for (const auto& [u, v] : edges) {
    s += "  <line class=\"dt-edge\" x1=\"" + px(u) + "\" y1=\"" + py(u) + "\" x2=\"" + px(v) + "\" y2=\"" + py(v) +
         "\"/>\n";
  }

  const auto d_ears = ear_tuples(a.tri.dt, a.d_ears);
  const auto ud_ears = ear_tuples(a.tri.udt, a.ud_ears);
  auto is_ear = [&](const IdTuple& t) {
    return std::find(d_ears.begin(), d_ears.end(), t) != d_ears.end() ||
           std::find(ud_ears.begin(), ud_ears.end(), t) != ud_ears.end();
  };
  for (const auto& rec : a.spheres.records) {
    if (rec.cls == SphereClass::Neither) continue;
    std::string cls = "sphere ";
    cls += rec.cls == SphereClass::Empty ? "empty" : "full";
    if (is_ear(rec.vertices)) cls += " ear";
    const double r = std::sqrt(rec.sphere.radius_sq.get_d()) * f.scale;
    s += "  <circle class=\"" + cls + "\" cx=\"" + num(f.x(rec.sphere.center[0].get_d())) + "\" cy=\"" +
         num(f.y(rec.sphere.center[1].get_d())) + "\" r=\"" + num(r) + "\"/>\n";
  }

  // Vertices are drawn as paths so that <circle> stays reserved for spheres.
  for (int v = 0; v < static_cast<int>(a.points.size()); ++v) {
    s += "  <path class=\"vertex\" d=\"M " + px(v) + " " + py(v) + " m -3 0 a 3 3 0 1 0 6 0 a 3 3 0 1 0 -6 0\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace esph::cli
