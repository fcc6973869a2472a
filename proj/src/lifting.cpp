#include "polytri/lifting.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

#include "polytri/error.hpp"

namespace polytri {

namespace {

std::string describe(const VertexSet& ids) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < ids.size(); ++i) os << (i ? "," : "") << ids[i];
  os << "}";
  return os.str();
}

struct Pieces {
  std::vector<VertexSet> full;      // every point on the upper facet
  std::vector<VertexSet> vertices;  // vertices of the projected cell
  std::vector<VertexId> below;
  UpperHull hull;
};

Pieces upper_pieces(const std::vector<VertexId>& ids, const std::map<VertexId, Point>& points,
                    const VerticialLifting& values) {
  std::vector<Point> pts;
  std::vector<Rational> heights;
  for (auto id : ids) {
    pts.push_back(points.at(id));
    auto it = values.find(id);
    if (it == values.end()) throw Error(ErrorCode::DomainMismatch, "no value for vertex " + std::to_string(id));
    heights.push_back(it->second);
  }
  Pieces out;
  out.hull = upper_hull(pts, heights);
  auto map_ids = [&](const IndexSet& s) {
    VertexSet v;
    for (auto i : s) v.push_back(ids[i]);
    std::sort(v.begin(), v.end());
    return v;
  };
  for (const auto& p : out.hull.pieces) out.full.push_back(map_ids(p));
  for (const auto& p : out.hull.piece_vertices) out.vertices.push_back(map_ids(p));
  for (auto i : out.hull.below) out.below.push_back(ids[i]);
  return out;
}

bool includes(const VertexSet& big, const VertexSet& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// Value at `x` of the affine function through (basis points, values).
Rational interpolate(std::span<const Point> basis, std::span<const Rational> values, const Point& x) {
  auto lambda = barycentric(basis, x);
  if (!lambda) throw Error(ErrorCode::CellNotContained, "point " + format_point(x) + " is off the affine hull");
  Rational v = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) v += (*lambda)[i] * values[i];
  return v;
}

}  // namespace

PLLifting as_pl(std::shared_ptr<const PolyComplex> complex, const VerticialLifting& values) {
  for (const auto& [id, p] : complex->vertices()) {
    if (!values.count(id)) throw Error(ErrorCode::DomainMismatch, "no value for vertex " + std::to_string(id));
  }
  PLLifting f{trivial_subdivision(std::move(complex)), {}};
  for (const auto& [id, p] : f.domain().vertices()) f.values[id] = values.at(id);
  return f;
}

Subdivision induced_subdivision(std::shared_ptr<const PolyComplex> complex, const VerticialLifting& f) {
  std::set<VertexSet> cells;
  for (auto m : complex->maximal_cells()) {
    const auto pieces = upper_pieces(complex->cell(m).vertices, complex->vertices(), f);
    cells.insert(pieces.vertices.begin(), pieces.vertices.end());
  }
  const std::vector<VertexSet> tops(cells.begin(), cells.end());
  auto vertices = complex->vertices();
  return make_subdivision(std::move(complex), std::move(vertices), tops);
}

Subdivision induced_subdivision(const PLLifting& f) {
  const auto& lin = f.linearity;
  const auto& parent = lin.base();
  std::set<VertexSet> cells;
  for (auto m : parent.maximal_cells()) {
    const auto ids = vertices_in(lin, m);
    const auto pieces = upper_pieces(ids, lin.refined.vertices(), f.values);
    if (!pieces.below.empty()) {
      throw Error(ErrorCode::NotConvexDown, "value at vertex " + std::to_string(pieces.below.front()) +
                                                " lies below the upper hull over cell " +
                                                describe(parent.cell(m).vertices));
    }
    for (std::size_t i = 0; i < lin.refined.cells().size(); ++i) {
      if (lin.carrier[i] != m || lin.refined.cell(i).dim != parent.cell(m).dim) continue;
      const auto& vs = lin.refined.cell(i).vertices;
      if (std::none_of(pieces.full.begin(), pieces.full.end(), [&](const VertexSet& p) { return includes(p, vs); })) {
        throw Error(ErrorCode::NotConvexDown, "linearity cell " + describe(vs) + " folds upward inside cell " +
                                                  describe(parent.cell(m).vertices));
      }
    }
    cells.insert(pieces.vertices.begin(), pieces.vertices.end());
  }
  std::map<VertexId, Point> vertices;
  for (const auto& c : cells) {
    for (auto v : c) vertices.emplace(v, lin.refined.point(v));
  }
  const std::vector<VertexSet> tops(cells.begin(), cells.end());
  return make_subdivision(lin.parent, std::move(vertices), tops);
}

PLLifting minimal_extension(std::shared_ptr<const PolyComplex> complex, const std::map<VertexId, Point>& points,
                            const VerticialLifting& values) {
  for (const auto& [id, p] : complex->vertices()) {
    auto it = points.find(id);
    if (it == points.end() || it->second != p) {
      throw Error(ErrorCode::DomainMismatch, "vertex " + std::to_string(id) + " of the complex is missing");
    }
  }
  for (const auto& [id, p] : points) {
    if (p.size() != complex->ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "point " + format_point(p));
    if (!values.count(id)) throw Error(ErrorCode::DomainMismatch, "no value for point " + std::to_string(id));
  }
  std::vector<bool> placed(points.size(), false);
  std::set<VertexSet> cells;
  for (auto m : complex->maximal_cells()) {
    const HRepresentation h(complex->cell_points(m));
    std::vector<VertexId> ids;
    std::size_t k = 0;
    for (const auto& [id, p] : points) {
      if (h.contains(p)) {
        ids.push_back(id);
        placed[k] = true;
      }
      ++k;
    }
    const auto pieces = upper_pieces(ids, points, values);
    if (!pieces.below.empty()) {
      const VertexId w = pieces.below.front();
      const auto y = *pieces.hull.frame.coordinates(points.at(w));
      Rational top;
      for (std::size_t i = 0; i < pieces.hull.gradients.size(); ++i) {
        const Rational v = dot(pieces.hull.gradients[i], y) + pieces.hull.constants[i];
        if (i == 0 || v < top) top = v;
      }
      throw Error(ErrorCode::UnattainableValue, "value " + format_rational(values.at(w)) + " at point " +
                                                    format_point(points.at(w)) + " is below the hull value " +
                                                    format_rational(top) + " over cell " +
                                                    describe(complex->cell(m).vertices));
    }
    cells.insert(pieces.vertices.begin(), pieces.vertices.end());
  }
  std::size_t k = 0;
  for (const auto& [id, p] : points) {
    if (!placed[k++]) throw Error(ErrorCode::DomainMismatch, "point " + format_point(p) + " is outside the complex");
  }
  std::map<VertexId, Point> used;
  VerticialLifting used_values;
  for (const auto& c : cells) {
    for (auto v : c) {
      used.emplace(v, points.at(v));
      used_values[v] = values.at(v);
    }
  }
  const std::vector<VertexSet> tops(cells.begin(), cells.end());
  return {make_subdivision(std::move(complex), std::move(used), tops), std::move(used_values)};
}

Rational evaluate(const PLLifting& f, const Point& x) {
  const Point pts[] = {x};
  const auto& refined = f.linearity.refined;
  auto c = refined.carrier_of(pts);
  if (!c) throw Error(ErrorCode::CellNotContained, "point " + format_point(x) + " is outside the domain");
  const auto& ids = refined.cell(*c).vertices;
  const auto cell_pts = refined.cell_points(*c);
  std::vector<Point> basis;
  std::vector<Rational> vals;
  for (auto i : affine_basis_indices(cell_pts)) {
    basis.push_back(cell_pts[i]);
    vals.push_back(f.values.at(ids[i]));
  }
  return interpolate(basis, vals, x);
}

PLLifting restrict(const PLLifting& f, const PolyComplex& sub) {
  if (!is_subcomplex(sub, f.domain())) throw Error(ErrorCode::NotSubcomplex, "restriction target is not a subcomplex");
  PLLifting out{restrict_subdivision(f.linearity, sub), {}};
  for (const auto& [id, p] : out.linearity.refined.vertices()) out.values[id] = f.values.at(id);
  return out;
}

VerticialLifting restrict(const VerticialLifting& f, const PolyComplex& sub) {
  VerticialLifting out;
  for (const auto& [id, p] : sub.vertices()) {
    auto it = f.find(id);
    if (it == f.end()) throw Error(ErrorCode::NotSubcomplex, "vertex " + std::to_string(id) + " is not in the domain");
    out[id] = it->second;
  }
  return out;
}

Subdivision refine_by(const Subdivision& base, const VerticialLifting& fprime) {
  auto inner = induced_subdivision(std::make_shared<const PolyComplex>(base.refined), fprime);
  Subdivision out;
  out.refined = std::move(inner.refined);
  out.parent = base.parent;
  out.carrier.resize(inner.carrier.size());
  for (std::size_t i = 0; i < inner.carrier.size(); ++i) out.carrier[i] = base.carrier[inner.carrier[i]];
  return out;
}

Rational explicit_epsilon(const PLLifting& f, const VerticialLifting& fprime) {
  const Subdivision coarse = induced_subdivision(f);
  const Subdivision fine = refine_by(coarse, fprime);
  const auto& parent = coarse.base();
  std::optional<Rational> best;
  for (auto m : parent.maximal_cells()) {
    const auto ws = vertices_in(coarse, m);
    for (std::size_t t = 0; t < fine.refined.cells().size(); ++t) {
      if (fine.carrier[t] != m || fine.refined.cell(t).dim != parent.cell(m).dim) continue;
      const auto& ids = fine.refined.cell(t).vertices;
      const auto pts = fine.refined.cell_points(t);
      std::vector<Point> basis;
      std::vector<Rational> fv, gv;
      for (auto i : affine_basis_indices(pts)) {
        basis.push_back(pts[i]);
        fv.push_back(f.values.at(ids[i]));
        gv.push_back(fprime.at(ids[i]));
      }
      for (auto w : ws) {
        if (std::binary_search(ids.begin(), ids.end(), w)) continue;
        const Point& x = coarse.refined.point(w);
        const Rational a = interpolate(basis, fv, x) - f.values.at(w);
        const Rational b = interpolate(basis, gv, x) - fprime.at(w);
        assert(sgn(a) >= 0);
        if (sgn(a) > 0 && sgn(b) < 0) {
          const Rational r = a / -b;
          if (!best || r < *best) best = r;
        }
      }
    }
  }
  if (!best) return 1;
  return *best / 2;
}

Rational explicit_epsilon(std::shared_ptr<const PolyComplex> complex, const VerticialLifting& f,
                          const VerticialLifting& fprime) {
  PLLifting pl{induced_subdivision(std::move(complex), f), {}};
  for (const auto& [id, p] : pl.linearity.refined.vertices()) pl.values[id] = f.at(id);
  return explicit_epsilon(pl, fprime);
}

PLLifting combine(const PLLifting& f, const VerticialLifting& fprime, const Rational& eps) {
  const Subdivision coarse = induced_subdivision(f);
  std::map<VertexId, Point> points = coarse.refined.vertices();
  VerticialLifting values;
  for (const auto& [id, p] : points) values[id] = f.values.at(id) + eps * fprime.at(id);
  return minimal_extension(f.linearity.parent, points, values);
}

VerticialLifting values_on(const PLLifting& f, const PolyComplex& target) {
  VerticialLifting out;
  for (const auto& [id, p] : target.vertices()) out[id] = evaluate(f, p);
  return out;
}

}  // namespace polytri
