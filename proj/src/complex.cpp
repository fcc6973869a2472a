#include "polytri/complex.hpp"

#include <algorithm>
#include <sstream>

#include "polytri/error.hpp"
#include "polytri/lp.hpp"

namespace polytri {

namespace {

std::vector<Point> points_of(const std::map<VertexId, Point>& vertices, const VertexSet& ids) {
  std::vector<Point> out;
  out.reserve(ids.size());
  for (auto id : ids) out.push_back(vertices.at(id));
  return out;
}

std::string describe(const VertexSet& ids) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < ids.size(); ++i) os << (i ? "," : "") << ids[i];
  os << "}";
  return os.str();
}

bool includes(const VertexSet& big, const VertexSet& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

PolyComplex PolyComplex::from_closed_cells(std::size_t ambient_dim, std::map<VertexId, Point> vertices,
                                           std::vector<Cell> cells, IntegralStructure integral) {
  PolyComplex c;
  c.ambient_dim_ = ambient_dim;
  c.vertices_ = std::move(vertices);
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.vertices < b.vertices;
  });
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  c.cells_ = std::move(cells);
  for (std::size_t i = 0; i < c.cells_.size(); ++i) c.index_[c.cells_[i].vertices] = i;
  for (std::size_t i = 0; i < c.cells_.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = i + 1; j < c.cells_.size() && maximal; ++j) {
      if (c.cells_[j].dim > c.cells_[i].dim && includes(c.cells_[j].vertices, c.cells_[i].vertices)) maximal = false;
    }
    if (maximal) c.maximal_.push_back(i);
  }
  c.integral_ = std::move(integral);
  return c;
}

PolyComplex PolyComplex::assemble(std::size_t ambient_dim, std::map<VertexId, Point> vertices,
                                  std::span<const VertexSet> maximal_cells, IntegralStructure integral) {
  std::set<VertexSet> seen;
  std::vector<Cell> cells;
  for (const auto& top : maximal_cells) {
    if (seen.count(top)) continue;
    const auto pts = points_of(vertices, top);
    const int dim = affine_dimension(pts);
    if (dim + 1 == static_cast<int>(top.size())) {
      const std::size_t n = top.size();
      for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        VertexSet s;
        for (std::size_t k = 0; k < n; ++k) {
          if (mask & (std::size_t{1} << k)) s.push_back(top[k]);
        }
        if (seen.insert(s).second) cells.push_back({s, static_cast<int>(s.size()) - 1});
      }
      continue;
    }
    for (const auto& face : face_lattice(pts)) {
      VertexSet s;
      for (auto k : face) s.push_back(top[k]);
      if (!seen.insert(s).second) continue;
      cells.push_back({s, affine_dimension(points_of(vertices, s))});
    }
  }
  return from_closed_cells(ambient_dim, std::move(vertices), std::move(cells), std::move(integral));
}

int PolyComplex::dimension() const { return cells_.empty() ? -1 : cells_.back().dim; }

std::optional<std::size_t> PolyComplex::find_cell(const VertexSet& vertices) const {
  auto it = index_.find(vertices);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> PolyComplex::maximal_cells() const { return maximal_; }

std::vector<std::size_t> PolyComplex::faces_of(std::size_t index) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].dim <= cells_[index].dim && includes(cells_[index].vertices, cells_[i].vertices)) out.push_back(i);
  }
  return out;
}

std::vector<Point> PolyComplex::cell_points(std::size_t index) const {
  return points_of(vertices_, cells_[index].vertices);
}

CellShape PolyComplex::shape(std::size_t index) const {
  CellShape s = cell_points(index);
  std::sort(s.begin(), s.end(), PointLess{});
  return s;
}

std::optional<std::size_t> PolyComplex::carrier_of(std::span<const Point> points) const {
  for (auto m : maximal_) {
    const HRepresentation h(cell_points(m));
    if (!std::all_of(points.begin(), points.end(), [&](const Point& p) { return h.contains(p); })) continue;
    // A face G of the maximal cell equals the cell intersected with aff(G).
    std::optional<std::size_t> best;
    for (auto f : faces_of(m)) {
      if (best && cells_[f].dim >= cells_[*best].dim) continue;
      const AffineFrame frame(cell_points(f));
      if (std::all_of(points.begin(), points.end(), [&](const Point& p) { return frame.contains(p); })) best = f;
    }
    return best;
  }
  return std::nullopt;
}

std::optional<std::size_t> PolyComplex::carrier_of_vertices(const VertexSet& ids) const {
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (includes(cells_[i].vertices, ids)) return i;
  }
  return std::nullopt;
}

std::set<CellShape> PolyComplex::shapes() const {
  std::set<CellShape> out;
  for (std::size_t i = 0; i < cells_.size(); ++i) out.insert(shape(i));
  return out;
}

std::set<Point, PointLess> PolyComplex::vertex_points() const {
  std::set<Point, PointLess> out;
  for (const auto& c : cells_) {
    if (c.dim == 0) out.insert(vertices_.at(c.vertices.front()));
  }
  return out;
}

bool intersect_properly(std::span<const Point> first, std::span<const Point> second, std::span<const Point> shared) {
  // Find an affine function a.x - b that is zero on the shared face, at most -1
  // on the rest of `first` and at least 1 on the rest of `second`.
  const std::size_t n = !first.empty() ? first[0].size() : second[0].size();
  const std::set<Point, PointLess> common(shared.begin(), shared.end());
  lp::System sys;
  sys.variables = n + 1;
  auto row = [&](const Point& p, int sign) {
    Point r(n + 1);
    for (std::size_t j = 0; j < n; ++j) r[j] = sign * p[j];
    r[n] = -sign;
    return r;
  };
  for (const auto& p : shared) sys.add(row(p, 1), lp::Relation::Equal, 0);
  for (const auto& p : first) {
    if (!common.count(p)) sys.add(row(p, -1), lp::Relation::GreaterEqual, 1);
  }
  for (const auto& q : second) {
    if (!common.count(q)) sys.add(row(q, 1), lp::Relation::GreaterEqual, 1);
  }
  return lp::solve(sys).feasible();
}

PolyComplex build_complex(const std::map<VertexId, Point>& vertices, std::span<const VertexSet> maximal_cells,
                          IntegralStructure integral) {
  if (vertices.empty()) throw Error(ErrorCode::DegenerateInput, "complex without vertices");
  const std::size_t n = vertices.begin()->second.size();
  for (const auto& [id, p] : vertices) {
    if (p.size() != n) {
      throw Error(ErrorCode::DimensionMismatch, "vertex " + std::to_string(id) + " has " + std::to_string(p.size()) +
                                                    " coordinates, expected " + std::to_string(n));
    }
  }
  if (integral.basis.rows() == 0 && n > 0) integral = IntegralStructure::standard(n);
  if (integral.basis.rows() != n || integral.basis.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "lattice basis must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (n > 0 && sgn(determinant(integral.basis)) == 0) {
    throw Error(ErrorCode::DimensionMismatch, "lattice basis is singular");
  }
  {
    std::map<Point, VertexId, PointLess> at;
    for (const auto& [id, p] : vertices) {
      auto [it, fresh] = at.emplace(p, id);
      if (!fresh) {
        throw Error(ErrorCode::DegenerateInput, "vertices " + std::to_string(it->second) + " and " +
                                                    std::to_string(id) + " coincide at " + format_point(p));
      }
    }
  }
  std::vector<VertexSet> cells;
  std::set<VertexId> used;
  for (VertexSet cell : maximal_cells) {
    std::sort(cell.begin(), cell.end());
    cell.erase(std::unique(cell.begin(), cell.end()), cell.end());
    if (cell.empty()) throw Error(ErrorCode::DegenerateInput, "empty cell");
    for (auto id : cell) {
      if (!vertices.count(id)) throw Error(ErrorCode::DomainMismatch, "cell refers to unknown vertex " + std::to_string(id));
    }
    const auto pts = points_of(vertices, cell);
    const Hull hull = convex_hull(pts);
    if (hull.vertices.size() != cell.size()) {
      for (std::size_t k = 0; k < cell.size(); ++k) {
        if (!std::binary_search(hull.vertices.begin(), hull.vertices.end(), k)) {
          throw Error(ErrorCode::RedundantVertex, "vertex " + std::to_string(cell[k]) + " " + format_point(pts[k]) +
                                                      " is not a vertex of cell " + describe(cell));
        }
      }
    }
    used.insert(cell.begin(), cell.end());
    cells.push_back(std::move(cell));
  }
  for (const auto& [id, p] : vertices) {
    if (!used.count(id)) {
      throw Error(ErrorCode::RedundantVertex, "vertex " + std::to_string(id) + " " + format_point(p) + " lies in no cell");
    }
  }
  PolyComplex complex = PolyComplex::assemble(n, vertices, cells, std::move(integral));
  const auto tops = complex.maximal_cells();
  for (std::size_t a = 0; a < tops.size(); ++a) {
    for (std::size_t b = a + 1; b < tops.size(); ++b) {
      const auto& va = complex.cell(tops[a]).vertices;
      const auto& vb = complex.cell(tops[b]).vertices;
      VertexSet common;
      std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(common));
      if (!intersect_properly(points_of(vertices, va), points_of(vertices, vb), points_of(vertices, common))) {
        throw Error(ErrorCode::NotIntersectionClosed,
                    "cells " + describe(va) + " and " + describe(vb) + " do not meet in a common face");
      }
    }
  }
  return complex;
}

PolyComplex build_complex(std::span<const Point> vertices, std::span<const VertexSet> maximal_cells,
                          IntegralStructure integral) {
  std::map<VertexId, Point> ids;
  for (std::size_t i = 0; i < vertices.size(); ++i) ids.emplace(i, vertices[i]);
  return build_complex(ids, maximal_cells, std::move(integral));
}

PolyComplex skeleton(const PolyComplex& complex, int k) {
  std::vector<Cell> cells;
  for (const auto& c : complex.cells()) {
    if (c.dim <= k) cells.push_back(c);
  }
  return PolyComplex::from_closed_cells(complex.ambient_dim(), complex.vertices(), std::move(cells), complex.integral());
}

namespace {

PolyComplex closure(const PolyComplex& complex, const std::vector<std::size_t>& tops) {
  std::set<std::size_t> keep;
  for (auto t : tops) {
    for (auto f : complex.faces_of(t)) keep.insert(f);
  }
  std::vector<Cell> cells;
  std::map<VertexId, Point> vertices;
  for (auto i : keep) {
    cells.push_back(complex.cell(i));
    for (auto v : complex.cell(i).vertices) vertices.emplace(v, complex.point(v));
  }
  return PolyComplex::from_closed_cells(complex.ambient_dim(), std::move(vertices), std::move(cells), complex.integral());
}

}  // namespace

PolyComplex boundary(const PolyComplex& complex) {
  const int d = complex.dimension();
  const auto tops = complex.maximal_cells();
  for (auto t : tops) {
    if (complex.cell(t).dim != d) {
      throw Error(ErrorCode::NotPure, "maximal cell " + describe(complex.cell(t).vertices) + " has dimension " +
                                          std::to_string(complex.cell(t).dim) + " < " + std::to_string(d));
    }
  }
  std::vector<std::size_t> facets;
  for (std::size_t i = 0; i < complex.cells().size(); ++i) {
    if (complex.cell(i).dim != d - 1) continue;
    int incident = 0;
    for (auto t : tops) {
      if (includes(complex.cell(t).vertices, complex.cell(i).vertices)) ++incident;
    }
    if (incident == 1) facets.push_back(i);
  }
  return closure(complex, facets);
}

PolyComplex subcomplex(const PolyComplex& complex, std::span<const VertexSet> cells) {
  std::vector<std::size_t> tops;
  for (VertexSet c : cells) {
    std::sort(c.begin(), c.end());
    auto idx = complex.find_cell(c);
    if (!idx) throw Error(ErrorCode::NotSubcomplex, describe(c) + " is not a cell of the complex");
    tops.push_back(*idx);
  }
  return closure(complex, tops);
}

bool is_subcomplex(const PolyComplex& sub, const PolyComplex& complex) {
  for (const auto& [id, p] : sub.vertices()) {
    if (!complex.has_vertex(id) || complex.point(id) != p) return false;
  }
  return std::all_of(sub.cells().begin(), sub.cells().end(),
                     [&](const Cell& c) { return complex.find_cell(c.vertices).has_value(); });
}

namespace {

std::optional<Point> find_uncovered_point(const PolyComplex& candidate, const PolyComplex& parent, std::size_t top) {
  const auto pts = parent.cell_points(top);
  std::vector<Point> probes = pts;
  for (const auto& s : pulling_triangulation(pts)) {
    Point c(parent.ambient_dim());
    for (auto i : s) c = c + pts[i];
    probes.push_back(Rational(1, static_cast<unsigned long>(s.size())) * c);
    for (auto i : s) probes.push_back(Rational(1, 2) * (Rational(1, static_cast<unsigned long>(s.size())) * c + pts[i]));
  }
  std::vector<HRepresentation> reps;
  for (auto m : candidate.maximal_cells()) reps.emplace_back(candidate.cell_points(m));
  for (const auto& p : probes) {
    if (std::none_of(reps.begin(), reps.end(), [&](const HRepresentation& h) { return h.contains(p); })) return p;
  }
  return std::nullopt;
}

}  // namespace

Subdivision is_subdivision(const PolyComplex& candidate, std::shared_ptr<const PolyComplex> parent_ptr) {
  const PolyComplex& parent = *parent_ptr;
  if (candidate.ambient_dim() != parent.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "complexes live in different ambient dimensions");
  }
  Subdivision sub;
  sub.carrier.resize(candidate.cells().size());
  for (std::size_t i = 0; i < candidate.cells().size(); ++i) {
    const auto pts = candidate.cell_points(i);
    auto c = parent.carrier_of(pts);
    if (!c) {
      throw Error(ErrorCode::CellNotContained,
                  "cell " + describe(candidate.cell(i).vertices) + " lies in no cell of the parent");
    }
    sub.carrier[i] = *c;
  }
  for (auto top : parent.maximal_cells()) {
    const auto pts = parent.cell_points(top);
    const AffineFrame frame(pts);
    const Rational whole = polytope_volume(pts, frame);
    Rational covered = 0;
    for (std::size_t i = 0; i < candidate.cells().size(); ++i) {
      if (sub.carrier[i] == top && candidate.cell(i).dim == parent.cell(top).dim) {
        covered += polytope_volume(candidate.cell_points(i), frame);
      }
    }
    if (covered != whole) {
      std::string msg = "cell " + describe(parent.cell(top).vertices) + " is covered with volume " +
                        format_rational(covered) + " of " + format_rational(whole);
      if (auto w = find_uncovered_point(candidate, parent, top)) msg += "; uncovered point " + format_point(*w);
      throw Error(ErrorCode::NotComplete, msg);
    }
  }
  sub.refined = candidate;
  sub.parent = std::move(parent_ptr);
  return sub;
}

Subdivision is_subdivision(const PolyComplex& candidate, const PolyComplex& parent) {
  return is_subdivision(candidate, std::make_shared<const PolyComplex>(parent));
}

Subdivision make_subdivision(std::shared_ptr<const PolyComplex> parent, std::map<VertexId, Point> vertices,
                             std::span<const VertexSet> maximal_cells) {
  Subdivision sub;
  sub.refined = PolyComplex::assemble(parent->ambient_dim(), std::move(vertices), maximal_cells, parent->integral());
  const auto& refined = sub.refined;
  sub.carrier.resize(refined.cells().size());
  for (std::size_t i = 0; i < refined.cells().size(); ++i) {
    const auto& ids = refined.cell(i).vertices;
    const bool old = std::all_of(ids.begin(), ids.end(), [&](VertexId v) {
      return parent->has_vertex(v) && parent->point(v) == refined.point(v);
    });
    auto c = old ? parent->carrier_of_vertices(ids) : parent->carrier_of(refined.cell_points(i));
    if (!c) throw Error(ErrorCode::CellNotContained, "cell " + describe(ids) + " lies in no cell of the parent");
    sub.carrier[i] = *c;
  }
  sub.parent = std::move(parent);
  return sub;
}

std::vector<VertexId> vertices_in(const Subdivision& subdivision, std::size_t parent_cell) {
  const auto& face = subdivision.base().cell(parent_cell).vertices;
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < subdivision.refined.cells().size(); ++i) {
    const auto& c = subdivision.refined.cell(i);
    if (c.dim != 0) continue;
    if (includes(face, subdivision.base().cell(subdivision.carrier[i]).vertices)) out.push_back(c.vertices.front());
  }
  return out;
}

Subdivision trivial_subdivision(std::shared_ptr<const PolyComplex> parent) {
  Subdivision sub;
  sub.refined = *parent;
  sub.carrier.resize(parent->cells().size());
  for (std::size_t i = 0; i < sub.carrier.size(); ++i) sub.carrier[i] = i;
  sub.parent = std::move(parent);
  return sub;
}

Subdivision restrict_subdivision(const Subdivision& subdivision, const PolyComplex& subcomplex) {
  if (!is_subcomplex(subcomplex, subdivision.base())) {
    throw Error(ErrorCode::NotSubcomplex, "restriction target is not a subcomplex of the parent");
  }
  std::vector<Cell> cells;
  std::vector<std::size_t> carriers;
  std::map<VertexId, Point> vertices;
  const auto& refined = subdivision.refined;
  for (std::size_t i = 0; i < refined.cells().size(); ++i) {
    auto target = subcomplex.find_cell(subdivision.base().cell(subdivision.carrier[i]).vertices);
    if (!target) continue;
    cells.push_back(refined.cell(i));
    for (auto v : refined.cell(i).vertices) vertices.emplace(v, refined.point(v));
  }
  Subdivision out;
  out.refined = PolyComplex::from_closed_cells(refined.ambient_dim(), std::move(vertices), std::move(cells),
                                               refined.integral());
  out.parent = std::make_shared<const PolyComplex>(subcomplex);
  out.carrier.resize(out.refined.cells().size());
  for (std::size_t i = 0; i < out.refined.cells().size(); ++i) {
    const auto orig = *refined.find_cell(out.refined.cell(i).vertices);
    out.carrier[i] = *subcomplex.find_cell(subdivision.base().cell(subdivision.carrier[orig]).vertices);
  }
  return out;
}

bool same_cells(const PolyComplex& a, const PolyComplex& b) { return a.shapes() == b.shapes(); }

}  // namespace polytri
