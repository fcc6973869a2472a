#include "polytri/hull.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "polytri/error.hpp"

namespace polytri {

namespace {

IndexSet intersect(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Point> gather(std::span<const Point> points, const IndexSet& idx) {
  std::vector<Point> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(points[i]);
  return out;
}

// Scale so the first nonzero coordinate has absolute value one; orientation kept.
void normalize(Point& normal, Rational& offset) {
  for (const auto& c : normal) {
    if (sgn(c) != 0) {
      const Rational s = 1 / abs(c);
      for (auto& x : normal) x *= s;
      offset *= s;
      return;
    }
  }
}

// Hyperplane through `on` (affinely spanning a hyperplane), oriented so that
// `inside` lies strictly on the negative side.
HullFacet hyperplane_through(std::span<const Point> points, const IndexSet& on, const Point& inside) {
  const Point& base = points[on.front()];
  std::vector<Point> diffs;
  for (std::size_t k = 1; k < on.size(); ++k) diffs.push_back(points[on[k]] - base);
  const std::size_t dim = base.size();
  Matrix m(diffs.size(), dim);
  for (std::size_t r = 0; r < diffs.size(); ++r) {
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = diffs[r][c];
  }
  auto ns = nullspace(m);
  HullFacet f;
  f.normal = ns.front();
  f.offset = dot(f.normal, base);
  if (dot(f.normal, inside) > f.offset) {
    for (auto& x : f.normal) x = -x;
    f.offset = -f.offset;
  }
  normalize(f.normal, f.offset);
  return f;
}

void check_distinct(std::span<const Point> points) {
  std::set<Point, PointLess> seen;
  for (const auto& p : points) {
    if (!seen.insert(p).second) throw Error(ErrorCode::DegenerateInput, "duplicate point " + format_point(p));
  }
}

}  // namespace

Hull full_dimensional_hull(std::span<const Point> points) {
  Hull hull;
  if (points.empty()) throw Error(ErrorCode::DegenerateInput, "convex hull of an empty set");
  const std::size_t d = points[0].size();
  hull.dimension = static_cast<int>(d);
  if (d == 0) {
    hull.vertices = {0};
    return hull;
  }
  const auto basis = affine_basis_indices(points);
  if (basis.size() != d + 1) throw Error(ErrorCode::DegenerateInput, "points do not span their ambient space");

  Point inside(d);
  for (auto i : basis) inside = inside + points[i];
  inside = Rational(1, static_cast<unsigned long>(d + 1)) * inside;

  std::vector<bool> processed(points.size(), false);
  for (auto i : basis) processed[i] = true;

  std::vector<HullFacet> facets;
  for (std::size_t skip = 0; skip < basis.size(); ++skip) {
    IndexSet on;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (k != skip) on.push_back(basis[k]);
    }
    std::sort(on.begin(), on.end());
    facets.push_back(hyperplane_through(points, on, inside));
    facets.back().points = on;
  }

  auto points_on = [&](const HullFacet& f) {
    IndexSet on;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (processed[i] && dot(f.normal, points[i]) == f.offset) on.push_back(i);
    }
    return on;
  };

  for (std::size_t i = 0; i < points.size(); ++i) {
    if (processed[i]) continue;
    processed[i] = true;
    const Point& p = points[i];
    std::vector<int> side(facets.size());
    bool any_visible = false;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      side[f] = cmp(dot(facets[f].normal, p), facets[f].offset);
      side[f] = side[f] > 0 ? 1 : (side[f] < 0 ? -1 : 0);
      if (side[f] > 0) any_visible = true;
    }
    if (!any_visible) {
      for (std::size_t f = 0; f < facets.size(); ++f) {
        if (side[f] == 0) {
          facets[f].points.insert(std::upper_bound(facets[f].points.begin(), facets[f].points.end(), i), i);
        }
      }
      continue;
    }

    std::vector<HullFacet> created;
    std::vector<bool> absorbs(facets.size(), false);
    for (std::size_t f = 0; f < facets.size(); ++f) {
      if (side[f] <= 0) continue;
      for (std::size_t g = 0; g < facets.size(); ++g) {
        if (side[g] > 0) continue;
        IndexSet ridge = intersect(facets[f].points, facets[g].points);
        if (ridge.empty() && d > 1) continue;
        if (!ridge.empty()) {
          const auto pts = gather(points, ridge);
          if (affine_dimension(pts) != static_cast<int>(d) - 2) continue;
        }
        if (side[g] == 0) {
          absorbs[g] = true;
          continue;
        }
        IndexSet on = ridge;
        on.insert(std::upper_bound(on.begin(), on.end(), i), i);
        HullFacet nf = hyperplane_through(points, on, inside);
        const bool duplicate = std::any_of(created.begin(), created.end(), [&](const HullFacet& c) {
          return c.normal == nf.normal && c.offset == nf.offset;
        });
        if (!duplicate) created.push_back(std::move(nf));
      }
    }
    std::vector<HullFacet> next;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      if (side[f] > 0) continue;
      if (absorbs[f]) {
        facets[f].points.insert(std::upper_bound(facets[f].points.begin(), facets[f].points.end(), i), i);
      }
      next.push_back(std::move(facets[f]));
    }
    for (auto& c : created) {
      c.points = points_on(c);
      next.push_back(std::move(c));
    }
    facets = std::move(next);
  }

  hull.facets = std::move(facets);
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<Point> normals;
    for (const auto& f : hull.facets) {
      if (std::binary_search(f.points.begin(), f.points.end(), i)) normals.push_back(f.normal);
    }
    if (normals.size() >= d && rank(Matrix::from_rows(normals)) == d) hull.vertices.push_back(i);
  }
  return hull;
}

Hull convex_hull(std::span<const Point> points) {
  if (points.empty()) throw Error(ErrorCode::DegenerateInput, "convex hull of an empty set");
  check_distinct(points);
  AffineFrame frame(points);
  std::vector<Point> local;
  local.reserve(points.size());
  for (const auto& p : points) local.push_back(*frame.coordinates(p));
  Hull hull = full_dimensional_hull(local);
  hull.frame = std::move(frame);
  return hull;
}

UpperHull upper_hull(std::span<const Point> points, std::span<const Rational> heights) {
  if (points.empty()) throw Error(ErrorCode::DegenerateInput, "upper hull needs at least one point");
  check_distinct(points);
  UpperHull result;
  result.frame = AffineFrame(points);
  const std::size_t d = static_cast<std::size_t>(result.frame.dimension());
  std::vector<Point> lifted;
  lifted.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    Point y = *result.frame.coordinates(points[i]);
    y.push_back(heights[i]);
    lifted.push_back(std::move(y));
  }
  IndexSet all(points.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

  auto base_vertices = [&](const IndexSet& piece) {
    std::vector<Point> pts = gather(points, piece);
    const Hull h = convex_hull(pts);
    IndexSet out;
    for (auto v : h.vertices) out.push_back(piece[v]);
    return out;
  };

  if (affine_dimension(lifted) == static_cast<int>(d)) {
    // Heights are affine: one piece. Recover the affine function from a basis.
    result.pieces.push_back(all);
    result.piece_vertices.push_back(base_vertices(all));
    const auto basis = affine_basis_indices(lifted);
    Matrix a(basis.size(), d + 1);
    Point b(basis.size());
    for (std::size_t r = 0; r < basis.size(); ++r) {
      for (std::size_t c = 0; c < d; ++c) a(r, c) = lifted[basis[r]][c];
      a(r, d) = 1;
      b[r] = heights[basis[r]];
    }
    Point sol = *solve(a, b);
    result.constants.push_back(sol[d]);
    sol.pop_back();
    result.gradients.push_back(std::move(sol));
    return result;
  }

  const Hull hull = full_dimensional_hull(lifted);
  std::vector<bool> on_upper(points.size(), false);
  std::vector<std::pair<IndexSet, std::size_t>> ordered;
  for (std::size_t f = 0; f < hull.facets.size(); ++f) {
    if (sgn(hull.facets[f].normal[d]) > 0) ordered.emplace_back(hull.facets[f].points, f);
  }
  std::sort(ordered.begin(), ordered.end());
  for (const auto& [piece, f] : ordered) {
    const auto& facet = hull.facets[f];
    for (auto i : piece) on_upper[i] = true;
    result.pieces.push_back(piece);
    result.piece_vertices.push_back(base_vertices(piece));
    // normal . (y, t) = offset  =>  t = (offset - normal_y . y) / normal_t
    const Rational nt = facet.normal[d];
    Point grad(d);
    for (std::size_t c = 0; c < d; ++c) grad[c] = -facet.normal[c] / nt;
    result.gradients.push_back(std::move(grad));
    result.constants.push_back(facet.offset / nt);
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!on_upper[i]) result.below.push_back(i);
  }
  return result;
}

std::vector<IndexSet> face_lattice(std::span<const Point> points) {
  const Hull hull = convex_hull(points);
  const int d = hull.dimension;
  const IndexSet& verts = hull.vertices;
  std::set<IndexSet> faces;
  faces.insert(verts);
  if (d == 0) return {verts};
  if (static_cast<int>(verts.size()) == d + 1) {
    // Simplex: every nonempty subset of the vertices.
    const std::size_t n = verts.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      IndexSet s;
      for (std::size_t k = 0; k < n; ++k) {
        if (mask & (std::size_t{1} << k)) s.push_back(verts[k]);
      }
      faces.insert(std::move(s));
    }
    return {faces.begin(), faces.end()};
  }
  std::vector<IndexSet> frontier;
  for (const auto& f : hull.facets) {
    IndexSet fv = intersect(f.points, verts);
    if (faces.insert(fv).second) frontier.push_back(fv);
  }
  std::vector<IndexSet> facet_sets(frontier);
  while (!frontier.empty()) {
    std::vector<IndexSet> next;
    for (const auto& a : frontier) {
      for (const auto& b : facet_sets) {
        IndexSet c = intersect(a, b);
        if (!c.empty() && faces.insert(c).second) next.push_back(std::move(c));
      }
    }
    frontier = std::move(next);
  }
  return {faces.begin(), faces.end()};
}

std::vector<IndexSet> pulling_triangulation(std::span<const Point> points) {
  const auto faces = face_lattice(points);
  std::map<IndexSet, int> dims;
  for (const auto& f : faces) dims[f] = affine_dimension(gather(points, f));
  std::map<IndexSet, std::vector<IndexSet>> memo;
  auto tri = [&](auto&& self, const IndexSet& face) -> std::vector<IndexSet> {
    if (auto it = memo.find(face); it != memo.end()) return it->second;
    const int k = dims.at(face);
    std::vector<IndexSet> out;
    if (static_cast<int>(face.size()) == k + 1) {
      out.push_back(face);
    } else {
      const std::size_t apex = face.front();
      for (const auto& [sub, sd] : dims) {
        if (sd != k - 1 || std::binary_search(sub.begin(), sub.end(), apex)) continue;
        if (!std::includes(face.begin(), face.end(), sub.begin(), sub.end())) continue;
        for (auto s : self(self, sub)) {
          s.insert(std::upper_bound(s.begin(), s.end(), apex), apex);
          out.push_back(std::move(s));
        }
      }
    }
    memo[face] = out;
    return out;
  };
  IndexSet top;
  for (const auto& f : faces) {
    if (f.size() > top.size()) top = f;
  }
  auto result = tri(tri, top);
  std::sort(result.begin(), result.end());
  return result;
}

Rational simplex_volume(std::span<const Point> simplex, const AffineFrame& frame) {
  const std::size_t d = static_cast<std::size_t>(frame.dimension());
  if (simplex.size() != d + 1) return 0;
  const Point o = *frame.coordinates(simplex[0]);
  Matrix m(d, d);
  for (std::size_t k = 1; k <= d; ++k) {
    const Point y = *frame.coordinates(simplex[k]);
    for (std::size_t c = 0; c < d; ++c) m(k - 1, c) = y[c] - o[c];
  }
  Rational det = abs(determinant(m));
  Integer fact = 1;
  for (std::size_t k = 2; k <= d; ++k) fact *= static_cast<unsigned long>(k);
  return det / Rational(fact);
}

Rational polytope_volume(std::span<const Point> points, const AffineFrame& frame) {
  if (affine_dimension(points) != frame.dimension()) return 0;
  Rational vol = 0;
  for (const auto& s : pulling_triangulation(points)) vol += simplex_volume(gather(points, s), frame);
  return vol;
}

HRepresentation::HRepresentation(std::span<const Point> points) {
  Hull h = convex_hull(points);
  dimension_ = h.dimension;
  frame_ = std::move(h.frame);
  facets_ = std::move(h.facets);
}

bool HRepresentation::contains(const Point& p) const {
  const auto y = frame_.coordinates(p);
  if (!y) return false;
  for (const auto& f : facets_) {
    if (dot(f.normal, *y) > f.offset) return false;
  }
  return true;
}

bool HRepresentation::contains_relative_interior(const Point& p) const {
  const auto y = frame_.coordinates(p);
  if (!y) return false;
  for (const auto& f : facets_) {
    if (dot(f.normal, *y) >= f.offset) return false;
  }
  return true;
}

}  // namespace polytri
