#include "esph/hull.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "esph/errors.hpp"
#include "esph/random.hpp"

namespace esph {

Sign Facet::side(const VectorD& p) const { return sign_of(dot(normal, p) - offset); }

std::vector<IdTuple> faces_of(const IdTuple& t) {
  std::vector<IdTuple> out;
  out.reserve(t.size());
  for (std::size_t skip = 0; skip < t.size(); ++skip) {
    IdTuple f;
    f.reserve(t.size() - 1);
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i != skip) f.push_back(t[i]);
    }
    out.push_back(std::move(f));
  }
  return out;
}

VectorD centroid(std::span<const VectorD> points) {
  if (points.empty()) throw InputError("centroid of no points");
  VectorD c(points[0].dim());
  for (const auto& p : points) c += p;
  c *= fraction(1, static_cast<unsigned long>(points.size()));
  return c;
}

namespace {

std::string tuple_str(const IdTuple& t) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
  os << ')';
  return os.str();
}

struct IdTupleHash {
  std::size_t operator()(const IdTuple& t) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int v : t) h = (h ^ static_cast<std::size_t>(v)) * 0x100000001b3ULL;
    return h;
  }
};

// Point x as the integer vector (L x, L) with L the common denominator.
std::vector<BigInt> homogenize(const VectorD& p) {
  std::vector<BigInt> h = clear_denominators(p.coords());
  h.push_back(common_denominator(p.coords()));
  return h;
}

BigInt hdot(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) mpz_addmul(s.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
  return s;
}

struct WorkFacet {
  IdTuple verts;
  std::vector<BigInt> plane;  // plane . (Lx, L) > 0  <=>  x beyond
  std::vector<int> nbr;       // nbr[k]: facet across the ridge without verts[k]
  std::vector<int> outside;
  bool alive = true;
};

class HullBuilder {
 public:
  HullBuilder(std::span<const VectorD> points, int dim, std::uint64_t seed)
      : pts_(points), dim_(dim), seed_(seed) {
    hom_.reserve(points.size());
    for (const auto& p : points) hom_.push_back(homogenize(p));
  }

  HullComplex build() {
    const int n = static_cast<int>(pts_.size());
    std::vector<int> order = shuffled_indices(n, seed_);
    std::vector<int> simplex = initial_simplex(order);
    interior_ = homogenize(centroid(gather(simplex)));

    std::vector<char> in_simplex(static_cast<std::size_t>(n), 0);
    for (int v : simplex) in_simplex[v] = 1;
    seed_facets(simplex);

    assigned_.assign(static_cast<std::size_t>(n), -1);
    for (int p : order) {
      if (in_simplex[p]) continue;
      for (int f = 0; f < static_cast<int>(facets_.size()); ++f) {
        if (side(f, p) == Sign::Positive) {
          assign(p, f);
          break;
        }
      }
    }
    for (int p : order) {
      if (in_simplex[p] || assigned_[p] < 0) continue;
      insert(p);
    }
    return finish();
  }

 private:
  std::span<const VectorD> pts_;
  int dim_;
  std::uint64_t seed_;
  std::vector<std::vector<BigInt>> hom_;
  std::vector<BigInt> interior_;
  std::vector<WorkFacet> facets_;
  std::vector<int> assigned_;

  std::vector<VectorD> gather(const std::vector<int>& ids) const {
    std::vector<VectorD> out;
    for (int i : ids) out.push_back(pts_[i]);
    return out;
  }

  Sign side(int f, int p) const { return sign_of(hdot(facets_[f].plane, hom_[p])); }

  void assign(int p, int f) {
    assigned_[p] = f;
    facets_[f].outside.push_back(p);
  }

  // First dim+1 affinely independent points in scan order.
  std::vector<int> initial_simplex(const std::vector<int>& order) const {
    std::vector<int> chosen;
    std::vector<VectorD> basis;  // reduced rows
    std::vector<int> pivots;
    for (int p : order) {
      if (chosen.empty()) {
        chosen.push_back(p);
        continue;
      }
      VectorD v = pts_[p] - pts_[chosen.front()];
      for (std::size_t b = 0; b < basis.size(); ++b) {
        const int c = pivots[b];
        if (v[c] != 0) {
          const Scalar f = v[c] / basis[b][c];
          v -= basis[b] * f;
        }
      }
      auto nz = std::find_if(v.begin(), v.end(), [](const Scalar& s) { return s != 0; });
      if (nz == v.end()) continue;
      pivots.push_back(static_cast<int>(nz - v.begin()));
      basis.push_back(std::move(v));
      chosen.push_back(p);
      if (static_cast<int>(chosen.size()) == dim_ + 1) return chosen;
    }
    throw InputError("points do not affinely span dimension " + std::to_string(dim_));
  }

  std::vector<BigInt> plane_through(const IdTuple& verts) const {
    const int cols = dim_ + 1;
    std::vector<BigInt> plane(static_cast<std::size_t>(cols));
    for (int skip = 0; skip < cols; ++skip) {
      std::vector<std::vector<BigInt>> minor;
      minor.reserve(verts.size());
      for (int v : verts) {
        std::vector<BigInt> row;
        row.reserve(static_cast<std::size_t>(dim_));
        for (int c = 0; c < cols; ++c) {
          if (c != skip) row.push_back(hom_[v][c]);
        }
        minor.push_back(std::move(row));
      }
      BigInt det = bareiss_determinant(std::move(minor));
      plane[skip] = (skip % 2 == 0) ? det : BigInt(-det);
    }
    BigInt g = 0;
    for (const auto& c : plane) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 0) throw GenericityViolation("affinely dependent facet " + tuple_str(verts), verts);
    for (auto& c : plane) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    const Sign s = sign_of(hdot(plane, interior_));
    if (s == Sign::Zero) throw GenericityViolation("facet hyperplane through the interior " + tuple_str(verts), verts);
    if (s == Sign::Positive) {
      for (auto& c : plane) c = -c;
    }
    return plane;
  }

  int make_facet(IdTuple verts) {
    std::sort(verts.begin(), verts.end());
    WorkFacet f;
    f.plane = plane_through(verts);
    f.nbr.assign(verts.size(), -1);
    f.verts = std::move(verts);
    facets_.push_back(std::move(f));
    return static_cast<int>(facets_.size()) - 1;
  }

  void seed_facets(const std::vector<int>& simplex) {
    // facet k omits simplex[k]
    std::unordered_map<int, int> omitting;
    for (std::size_t k = 0; k < simplex.size(); ++k) {
      IdTuple verts;
      for (std::size_t j = 0; j < simplex.size(); ++j) {
        if (j != k) verts.push_back(simplex[j]);
      }
      omitting[simplex[k]] = make_facet(std::move(verts));
    }
    for (auto& f : facets_) {
      for (std::size_t k = 0; k < f.verts.size(); ++k) f.nbr[k] = omitting.at(f.verts[k]);
    }
  }

  void insert(int p) {
    const int start = assigned_[p];
    // Facets the point sees, plus facets it is coplanar with that touch them;
    // the latter are re-triangulated and rejected at the end if they remain
    // non-simplicial.
    std::vector<int> visible{start};
    std::unordered_map<int, bool> seen{{start, true}};
    for (std::size_t q = 0; q < visible.size(); ++q) {
      const WorkFacet& f = facets_[visible[q]];
      for (int g : f.nbr) {
        if (seen.count(g)) continue;
        const bool vis = side(g, p) != Sign::Negative;
        seen[g] = vis;
        if (vis) visible.push_back(g);
      }
    }

    std::vector<int> created;
    std::unordered_map<IdTuple, std::pair<int, int>, IdTupleHash> pending;
    for (int v : visible) {
      for (std::size_t k = 0; k < facets_[v].verts.size(); ++k) {
        const int g = facets_[v].nbr[k];
        if (seen.at(g)) continue;
        IdTuple verts = facets_[v].verts;
        verts.erase(verts.begin() + static_cast<std::ptrdiff_t>(k));
        verts.push_back(p);
        const int nf = make_facet(std::move(verts));
        created.push_back(nf);
        WorkFacet& f = facets_[nf];
        for (std::size_t j = 0; j < f.verts.size(); ++j) {
          if (f.verts[j] == p) {
            f.nbr[j] = g;
            continue;
          }
          IdTuple ridge = f.verts;
          ridge.erase(ridge.begin() + static_cast<std::ptrdiff_t>(j));
          auto it = pending.find(ridge);
          if (it == pending.end()) {
            pending.emplace(std::move(ridge), std::make_pair(nf, static_cast<int>(j)));
          } else {
            auto [other, slot] = it->second;
            f.nbr[j] = other;
            facets_[other].nbr[slot] = nf;
            pending.erase(it);
          }
        }
        auto& gn = facets_[g].nbr;
        std::replace(gn.begin(), gn.end(), v, nf);
      }
    }
    if (!pending.empty()) throw InternalError("hull: unmatched horizon ridge");

    for (int v : visible) {
      facets_[v].alive = false;
      for (int q : facets_[v].outside) {
        if (q == p || assigned_[q] != v) continue;
        assigned_[q] = -1;
        for (int nf : created) {
          if (side(nf, q) == Sign::Positive) {
            assign(q, nf);
            break;
          }
        }
      }
      facets_[v].outside.clear();
    }
    assigned_[p] = -1;
  }

  HullComplex finish() {
    HullComplex h;
    h.ambient_dim = dim_;
    h.points.assign(pts_.begin(), pts_.end());
    std::vector<int> remap(facets_.size(), -1);
    std::vector<int> alive;
    for (int f = 0; f < static_cast<int>(facets_.size()); ++f) {
      if (facets_[f].alive) {
        remap[f] = static_cast<int>(alive.size());
        alive.push_back(f);
      }
    }

    const int n = static_cast<int>(pts_.size());
    std::vector<char> is_vertex(static_cast<std::size_t>(n), 0);
    for (int f : alive) {
      for (int v : facets_[f].verts) is_vertex[v] = 1;
    }
    for (int p = 0; p < n; ++p) {
      if (is_vertex[p]) continue;
      for (int f : alive) {
        const Sign s = side(f, p);
        if (s == Sign::Positive) throw InternalError("hull: point left outside");
        if (s == Sign::Zero) {
          IdTuple ids = facets_[f].verts;
          ids.push_back(p);
          std::sort(ids.begin(), ids.end());
          throw GenericityViolation("point " + std::to_string(p) + " lies on the hull boundary", ids);
        }
      }
      throw NotInConvexPosition("point " + std::to_string(p) + " is strictly inside the hull", p);
    }
    for (int f : alive) {
      const auto& verts = facets_[f].verts;
      for (int p = 0; p < n; ++p) {
        if (std::binary_search(verts.begin(), verts.end(), p)) continue;
        const Sign s = side(f, p);
        if (s == Sign::Positive) throw InternalError("hull: point beyond a final facet");
        if (s == Sign::Zero) {
          IdTuple ids = verts;
          ids.push_back(p);
          std::sort(ids.begin(), ids.end());
          throw GenericityViolation("non-simplicial hull face " + tuple_str(ids), ids);
        }
      }
    }

    h.facets.reserve(alive.size());
    for (int f : alive) {
      const WorkFacet& w = facets_[f];
      Facet out;
      out.vertex_ids = w.verts;
      out.normal = VectorD(static_cast<std::size_t>(dim_));
      for (int c = 0; c < dim_; ++c) out.normal[c] = Scalar(w.plane[c]);
      out.offset = Scalar(BigInt(-w.plane[dim_]));
      h.facets.push_back(std::move(out));
    }
    for (int f : alive) {
      const WorkFacet& w = facets_[f];
      for (std::size_t k = 0; k < w.verts.size(); ++k) {
        IdTuple ridge = w.verts;
        ridge.erase(ridge.begin() + static_cast<std::ptrdiff_t>(k));
        const int a = remap[f];
        const int b = remap[w.nbr[k]];
        if (b < 0) throw InternalError("hull: dangling neighbour");
        h.ridge_adjacency.emplace(std::move(ridge), std::make_pair(std::min(a, b), std::max(a, b)));
      }
    }
    return h;
  }
};

}  // namespace

HullComplex convex_hull(std::span<const VectorD> points, int ambient_dim, std::uint64_t seed) {
  if (ambient_dim < 1) throw InputError("ambient dimension must be positive");
  if (static_cast<int>(points.size()) < ambient_dim + 1) {
    throw InputError("need at least " + std::to_string(ambient_dim + 1) + " points for a hull in dimension " +
                     std::to_string(ambient_dim));
  }
  for (const auto& p : points) {
    if (static_cast<int>(p.dim()) != ambient_dim) throw InputError("point dimension does not match ambient dimension");
  }
  return HullBuilder(points, ambient_dim, seed).build();
}

Diagnostics validate_complex(const HullComplex& h) {
  Diagnostics d;
  const int dim = h.ambient_dim;
  const int n = static_cast<int>(h.points.size());
  if (h.facets.empty()) d.fail("no facets");
  std::vector<char> is_vertex(static_cast<std::size_t>(n), 0);

  for (int f = 0; f < static_cast<int>(h.facets.size()); ++f) {
    const Facet& fc = h.facets[f];
    const std::string tag = "facet " + std::to_string(f) + " " + tuple_str(fc.vertex_ids);
    if (static_cast<int>(fc.vertex_ids.size()) != dim) {
      d.fail(tag + ": not a simplex of the right size");
      continue;
    }
    if (!std::is_sorted(fc.vertex_ids.begin(), fc.vertex_ids.end()) ||
        std::adjacent_find(fc.vertex_ids.begin(), fc.vertex_ids.end()) != fc.vertex_ids.end()) {
      d.fail(tag + ": vertex ids not strictly increasing");
      continue;
    }
    if (fc.vertex_ids.front() < 0 || fc.vertex_ids.back() >= n) {
      d.fail(tag + ": vertex id out of range");
      continue;
    }
    if (static_cast<int>(fc.normal.dim()) != dim) {
      d.fail(tag + ": normal has wrong dimension");
      continue;
    }
    for (int v : fc.vertex_ids) is_vertex[v] = 1;
    for (int p = 0; p < n; ++p) {
      const bool own = std::binary_search(fc.vertex_ids.begin(), fc.vertex_ids.end(), p);
      const Sign s = fc.side(h.points[p]);
      if (own && s != Sign::Zero) d.fail(tag + ": vertex " + std::to_string(p) + " off its hyperplane");
      if (!own && s != Sign::Negative) {
        d.fail(tag + ": point " + std::to_string(p) + (s == Sign::Zero ? " on" : " beyond") + " the hyperplane");
      }
    }
  }
  for (int p = 0; p < n; ++p) {
    if (!is_vertex[p]) d.fail("point " + std::to_string(p) + " is not a hull vertex");
  }

  std::size_t expected = 0;
  for (int f = 0; f < static_cast<int>(h.facets.size()); ++f) {
    const Facet& fc = h.facets[f];
    if (static_cast<int>(fc.vertex_ids.size()) != dim) continue;
    for (const auto& ridge : faces_of(fc.vertex_ids)) {
      ++expected;
      auto it = h.ridge_adjacency.find(ridge);
      if (it == h.ridge_adjacency.end()) {
        d.fail("ridge " + tuple_str(ridge) + " of facet " + std::to_string(f) + " missing from adjacency");
      } else if (it->second.first != f && it->second.second != f) {
        d.fail("ridge " + tuple_str(ridge) + " does not list facet " + std::to_string(f));
      }
    }
  }
  for (const auto& [ridge, pair] : h.ridge_adjacency) {
    const auto [a, b] = pair;
    const int nf = static_cast<int>(h.facets.size());
    if (a == b || a < 0 || b < 0 || a >= nf || b >= nf) {
      d.fail("ridge " + tuple_str(ridge) + " has an invalid facet pair");
      continue;
    }
    for (int f : {a, b}) {
      const auto& vs = h.facets[f].vertex_ids;
      if (!std::includes(vs.begin(), vs.end(), ridge.begin(), ridge.end())) {
        d.fail("ridge " + tuple_str(ridge) + " is not a face of facet " + std::to_string(f));
      }
    }
  }
  if (expected != 2 * h.ridge_adjacency.size()) {
    d.fail("ridge count mismatch: " + std::to_string(expected) + " facet-ridge incidences for " +
           std::to_string(h.ridge_adjacency.size()) + " ridges");
  }
  return d;
}

Scalar hull_volume(const HullComplex& h) {
  const VectorD c = centroid(h.points);
  Scalar total = 0;
  std::vector<VectorD> simplex;
  for (const auto& f : h.facets) {
    simplex.clear();
    simplex.push_back(c);
    for (int v : f.vertex_ids) simplex.push_back(h.points[v]);
    total += simplex_volume(simplex);
  }
  return total;
}

}  // namespace esph
