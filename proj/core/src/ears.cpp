#include "esph/ears.hpp"

#include <algorithm>
#include <map>

#include "esph/errors.hpp"

namespace esph {

namespace {

std::map<IdTuple, int> face_incidence(const Triangulation& t) {
  std::map<IdTuple, int> count;
  for (const auto& s : t.simplices) {
    for (auto& f : faces_of(s)) ++count[std::move(f)];
  }
  for (const auto& [face, c] : count) {
    if (c > 2) {
      throw MalformedTriangulation("a (d-1)-face is shared by " + std::to_string(c) + " simplices");
    }
  }
  return count;
}

}  // namespace

std::vector<IdTuple> boundary_facets(const Triangulation& t) {
  std::vector<IdTuple> out;
  for (const auto& [face, c] : face_incidence(t)) {
    if (c == 1) out.push_back(face);
  }
  return out;
}

bool EarSet::contains(int simplex) const {
  return std::binary_search(ear_simplex_ids.begin(), ear_simplex_ids.end(), simplex);
}

EarSet detect_ears(const Triangulation& t) {
  const auto incidence = face_incidence(t);
  EarSet ears;
  ears.kind = t.kind;
  ears.boundary_facet_count.reserve(t.simplices.size());
  for (int s = 0; s < static_cast<int>(t.simplices.size()); ++s) {
    int on_boundary = 0;
    for (const auto& f : faces_of(t.simplices[s])) {
      if (incidence.at(f) == 1) ++on_boundary;
    }
    ears.boundary_facet_count.push_back(on_boundary);
    if (on_boundary >= 2) ears.ear_simplex_ids.push_back(s);
  }
  return ears;
}

}  // namespace esph
