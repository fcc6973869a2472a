#include "polytri/conical.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "polytri/error.hpp"
#include "polytri/lattice.hpp"
#include "polytri/lp.hpp"

namespace polytri {

namespace {

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

bool is_zero(const Point& p) {
  return std::all_of(p.begin(), p.end(), [](const Rational& x) { return sgn(x) == 0; });
}

std::vector<Point> scaled(std::span<const Point> rays, const Point& u) {
  std::vector<Point> out;
  for (const auto& r : rays) out.push_back(Rational(1) / dot(u, r) * r);
  return out;
}

// Indices of a linearly independent subset spanning the same space.
std::vector<std::size_t> linear_basis(std::span<const Point> vectors) {
  std::vector<std::size_t> out;
  std::vector<Point> chosen;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    chosen.push_back(vectors[i]);
    if (rank(Matrix::from_rows(chosen)) == chosen.size()) {
      out.push_back(i);
    } else {
      chosen.pop_back();
    }
  }
  return out;
}

bool in_span(std::span<const Point> vectors, const Point& x) {
  if (vectors.empty()) return is_zero(x);
  return solve(Matrix::from_columns(vectors), x).has_value();
}

// Cones R1, R2 meet exactly in the common face spanned by the shared rays.
bool cones_meet_properly(std::span<const Point> first, std::span<const Point> second, std::span<const Point> shared) {
  const std::size_t n = first.front().size();
  auto is_shared = [&](const Point& p) { return std::find(shared.begin(), shared.end(), p) != shared.end(); };
  lp::System sys;
  sys.variables = n;
  for (const auto& s : shared) sys.add(s, lp::Relation::Equal, 0);
  for (const auto& r : first) {
    if (!is_shared(r)) sys.add(Rational(-1) * r, lp::Relation::GreaterEqual, 1);
  }
  for (const auto& r : second) {
    if (!is_shared(r)) sys.add(r, lp::Relation::GreaterEqual, 1);
  }
  return lp::solve(sys).feasible();
}

Point primitive_integer(const Point& p) {
  Point v = p;
  const Integer den = lcm_of_denominators(v);
  Integer g = 0;
  for (auto& c : v) {
    c *= den;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
  }
  for (auto& c : v) c /= Rational(g);
  return v;
}

// Per-cone upper hull of homogeneous values. Returns the ray sets of the
// pieces; `below` receives a ray whose value is not attained.
std::vector<VertexSet> homogeneous_pieces(const ConicalComplex& complex, const std::map<VertexId, Point>& all_rays,
                                          const std::map<VertexId, Rational>& values, std::optional<VertexId>& below) {
  std::set<VertexSet> out;
  for (auto m : complex.maximal_cones()) {
    const auto gens = complex.generators(complex.cone(m).rays);
    const Point u = *positive_functional(gens);
    std::vector<VertexId> ids;
    std::vector<Point> pts;
    std::vector<Rational> heights;
    for (const auto& [id, r] : all_rays) {
      const Point rr[] = {r};
      bool inside = std::binary_search(complex.cone(m).rays.begin(), complex.cone(m).rays.end(), id);
      if (!inside && !complex.has_ray(id)) {
        auto c = complex.carrier_of(rr);
        inside = c && includes(complex.cone(m).rays, complex.cone(*c).rays);
      }
      if (!inside) continue;
      auto it = values.find(id);
      if (it == values.end()) throw Error(ErrorCode::DomainMismatch, "no value for ray " + std::to_string(id));
      const Rational s = dot(u, r);
      ids.push_back(id);
      pts.push_back(Rational(1) / s * r);
      heights.push_back(it->second / s);
    }
    const UpperHull hull = upper_hull(pts, heights);
    if (!hull.below.empty()) {
      below = ids[hull.below.front()];
      return {};
    }
    for (const auto& piece : hull.piece_vertices) {
      VertexSet s;
      for (auto i : piece) s.push_back(ids[i]);
      std::sort(s.begin(), s.end());
      out.insert(std::move(s));
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace

std::optional<Point> positive_functional(std::span<const Point> rays) {
  lp::System sys;
  sys.variables = rays.front().size();
  for (const auto& r : rays) sys.add(r, lp::Relation::GreaterEqual, 1);
  auto result = lp::solve(sys);
  if (!result.feasible()) return std::nullopt;
  return *result.solution;
}

ConicalComplex ConicalComplex::build(std::size_t ambient_dim, const std::map<VertexId, Point>& generators,
                                     std::span<const VertexSet> maximal_cones, IntegralStructure integral,
                                     std::map<VertexSet, Matrix> cone_lattices) {
  return make(ambient_dim, generators, maximal_cones, std::move(integral), std::move(cone_lattices), true);
}

ConicalComplex ConicalComplex::assemble(std::size_t ambient_dim, const std::map<VertexId, Point>& generators,
                                        std::span<const VertexSet> maximal_cones, IntegralStructure integral,
                                        std::map<VertexSet, Matrix> cone_lattices) {
  return make(ambient_dim, generators, maximal_cones, std::move(integral), std::move(cone_lattices), false);
}

ConicalComplex ConicalComplex::make(std::size_t ambient_dim, const std::map<VertexId, Point>& generators,
                                    std::span<const VertexSet> maximal_cones, IntegralStructure integral,
                                    std::map<VertexSet, Matrix> cone_lattices, bool check_intersections) {
  if (integral.basis.rows() == 0) integral = IntegralStructure::standard(ambient_dim);
  if (integral.basis.rows() != ambient_dim || integral.basis.cols() != ambient_dim) {
    throw Error(ErrorCode::DimensionMismatch, "lattice basis must be square of the ambient dimension");
  }
  if (rank(integral.basis) != ambient_dim) throw Error(ErrorCode::DegenerateInput, "lattice basis is singular");
  std::vector<std::pair<VertexId, Point>> gens(generators.begin(), generators.end());
  for (const auto& [id, g] : gens) {
    if (g.size() != ambient_dim) throw Error(ErrorCode::DimensionMismatch, "ray " + std::to_string(id));
    if (is_zero(g)) throw Error(ErrorCode::DegenerateInput, "ray " + std::to_string(id) + " has a zero generator");
  }
  if (check_intersections) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (primitive_integer(gens[i].second) == primitive_integer(gens[j].second)) {
          throw Error(ErrorCode::DegenerateInput, "rays " + std::to_string(gens[j].first) + " and " +
                                                      std::to_string(gens[i].first) + " are parallel");
        }
      }
    }
  }

  ConicalComplex c;
  c.ambient_dim_ = ambient_dim;
  c.integral_ = std::move(integral);
  std::set<VertexSet> tops;
  for (VertexSet m : maximal_cones) {
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    if (m.empty()) continue;
    for (auto id : m) {
      if (!generators.count(id)) throw Error(ErrorCode::DomainMismatch, "unknown ray " + std::to_string(id));
    }
    tops.insert(m);
  }
  std::set<Cone> cones;
  std::vector<VertexSet> top_list(tops.begin(), tops.end());
  for (const auto& m : top_list) {
    std::vector<Point> g;
    for (auto id : m) g.push_back(generators.at(id));
    auto u = positive_functional(g);
    if (!u) throw Error(ErrorCode::NotPointed, "cone " + describe(m) + " contains a line");
    const auto q = scaled(g, *u);
    if (convex_hull(q).vertices.size() != q.size()) {
      throw Error(ErrorCode::RedundantVertex, "cone " + describe(m) + " lists a ray that is not extreme");
    }
    for (const auto& face : face_lattice(q)) {
      VertexSet ids;
      std::vector<Point> fq;
      for (auto i : face) {
        ids.push_back(m[i]);
        fq.push_back(q[i]);
      }
      cones.insert(Cone{ids, affine_dimension(fq) + 1});
    }
  }
  std::set<VertexId> used;
  for (const auto& cone : cones) used.insert(cone.rays.begin(), cone.rays.end());
  for (const auto& [id, g] : gens) {
    if (!used.count(id)) throw Error(ErrorCode::RedundantVertex, "ray " + std::to_string(id) + " lies in no cone");
  }
  if (check_intersections) {
    for (std::size_t i = 0; i < top_list.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        VertexSet shared;
        std::set_intersection(top_list[i].begin(), top_list[i].end(), top_list[j].begin(), top_list[j].end(),
                              std::back_inserter(shared));
        std::vector<Point> a, b, s;
        for (auto id : top_list[i]) a.push_back(generators.at(id));
        for (auto id : top_list[j]) b.push_back(generators.at(id));
        for (auto id : shared) s.push_back(generators.at(id));
        if (!cones_meet_properly(a, b, s)) {
          throw Error(ErrorCode::NotIntersectionClosed,
                      "cones " + describe(top_list[j]) + " and " + describe(top_list[i]) + " overlap improperly");
        }
      }
    }
  }
  c.cones_.assign(cones.begin(), cones.end());
  std::sort(c.cones_.begin(), c.cones_.end(),
            [](const Cone& a, const Cone& b) { return a.dim != b.dim ? a.dim < b.dim : a.rays < b.rays; });
  for (std::size_t i = 0; i < c.cones_.size(); ++i) c.index_[c.cones_[i].rays] = i;
  for (std::size_t i = 0; i < c.cones_.size(); ++i) {
    const bool top = std::none_of(c.cones_.begin(), c.cones_.end(), [&](const Cone& o) {
      return o.rays.size() > c.cones_[i].rays.size() && includes(o.rays, c.cones_[i].rays);
    });
    if (top) {
      c.maximal_.push_back(i);
      c.functional_.push_back(*positive_functional(c.generators_of(c.cones_[i].rays, generators)));
    }
  }
  for (auto& [key, basis] : cone_lattices) {
    if (!c.index_.count(key)) throw Error(ErrorCode::DomainMismatch, "lattice given for unknown cone " + describe(key));
  }
  c.cone_lattices_ = std::move(cone_lattices);
  for (const auto& [id, g] : gens) {
    c.rays_[id] = Ray{g, {}};
  }
  for (auto& [id, ray] : c.rays_) ray.primitive = lattice::primitive_vector(c.lattice_of({id}), ray.generator);
  return c;
}

std::vector<Point> ConicalComplex::generators_of(const VertexSet& rays, const std::map<VertexId, Point>& gens) {
  std::vector<Point> out;
  for (auto id : rays) out.push_back(gens.at(id));
  return out;
}

std::optional<std::size_t> ConicalComplex::find_cone(const VertexSet& rays) const {
  auto it = index_.find(rays);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::map<VertexId, Point> ConicalComplex::generators() const {
  std::map<VertexId, Point> out;
  for (const auto& [id, r] : rays_) out[id] = r.generator;
  return out;
}

std::vector<Point> ConicalComplex::generators(const VertexSet& rays) const {
  std::vector<Point> out;
  for (auto id : rays) out.push_back(rays_.at(id).generator);
  return out;
}

Matrix ConicalComplex::lattice_of(const VertexSet& rays) const {
  const auto gens = generators(rays);
  for (auto m : maximal_) {
    if (!includes(cones_[m].rays, rays)) continue;
    auto it = cone_lattices_.find(cones_[m].rays);
    if (it != cone_lattices_.end()) return lattice::intersect_with_span(it->second, gens);
    break;
  }
  return lattice::intersect_with_span(integral_.basis, gens);
}

std::optional<std::size_t> ConicalComplex::carrier_of(std::span<const Point> points) const {
  if (std::all_of(points.begin(), points.end(), is_zero)) return std::nullopt;
  for (std::size_t k = 0; k < maximal_.size(); ++k) {
    const auto m = maximal_[k];
    const Point& u = functional_[k];
    const auto gens = generators(cones_[m].rays);
    const HRepresentation h(scaled(gens, u));
    const bool inside = std::all_of(points.begin(), points.end(), [&](const Point& x) {
      if (is_zero(x)) return true;
      const Rational s = dot(u, x);
      return sgn(s) > 0 && h.contains(Rational(1) / s * x);
    });
    if (!inside) continue;
    std::optional<std::size_t> best;
    for (std::size_t f = 0; f < cones_.size(); ++f) {
      if (!includes(cones_[m].rays, cones_[f].rays)) continue;
      if (best && cones_[f].dim >= cones_[*best].dim) continue;
      const auto fg = generators(cones_[f].rays);
      if (std::all_of(points.begin(), points.end(), [&](const Point& x) { return in_span(fg, x); })) best = f;
    }
    return best;
  }
  return std::nullopt;
}

bool ConicalComplex::contains(const Point& x) const {
  if (is_zero(x)) return true;
  const Point pts[] = {x};
  return carrier_of(pts).has_value();
}

ConicalComplex conical_subcomplex(const ConicalComplex& complex, std::span<const VertexSet> cones) {
  std::map<VertexId, Point> gens;
  std::vector<VertexSet> tops;
  for (VertexSet c : cones) {
    std::sort(c.begin(), c.end());
    if (!complex.find_cone(c)) throw Error(ErrorCode::NotSubcomplex, describe(c) + " is not a cone of the complex");
    for (auto id : c) gens[id] = complex.ray(id).generator;
    tops.push_back(std::move(c));
  }
  std::map<VertexSet, Matrix> lattices;
  auto out = ConicalComplex::assemble(complex.ambient_dim(), gens, tops, complex.integral());
  if (complex.cone_lattices().empty()) return out;
  for (auto m : out.maximal_cones()) lattices[out.cone(m).rays] = complex.lattice_of(out.cone(m).rays);
  return ConicalComplex::assemble(complex.ambient_dim(), gens, tops, complex.integral(), std::move(lattices));
}

void validate_slicing(const ConicalComplex& complex, const SlicingFunction& h) {
  for (const auto& [id, r] : complex.rays()) {
    auto it = h.ray_values.find(id);
    if (it == h.ray_values.end()) throw Error(ErrorCode::NotSlicing, "no value on ray " + std::to_string(id));
    if (sgn(it->second) <= 0) throw Error(ErrorCode::NotSlicing, "value on ray " + std::to_string(id) + " is not positive");
  }
  for (auto m : complex.maximal_cones()) {
    const auto& ids = complex.cone(m).rays;
    const auto gens = complex.generators(ids);
    const auto basis = linear_basis(gens);
    std::vector<Point> cols;
    for (auto b : basis) cols.push_back(gens[b]);
    const Matrix a = Matrix::from_columns(cols);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const auto mu = *solve(a, gens[i]);
      Rational v = 0;
      for (std::size_t j = 0; j < basis.size(); ++j) v += mu[j] * h.ray_values.at(ids[basis[j]]);
      if (v != h.ray_values.at(ids[i])) {
        throw Error(ErrorCode::NotSlicing, "ray values are not linear on cone " + describe(ids));
      }
    }
  }
}

Rational evaluate(const ConicalComplex& complex, const std::map<VertexId, Rational>& ray_values, const Point& x) {
  if (is_zero(x)) return 0;
  const Point pts[] = {x};
  auto c = complex.carrier_of(pts);
  if (!c) throw Error(ErrorCode::CellNotContained, "point " + format_point(x) + " is outside the support");
  const auto& ids = complex.cone(*c).rays;
  const auto gens = complex.generators(ids);
  const auto basis = linear_basis(gens);
  std::vector<Point> cols;
  for (auto b : basis) cols.push_back(gens[b]);
  const auto mu = *solve(Matrix::from_columns(cols), x);
  Rational v = 0;
  for (std::size_t j = 0; j < basis.size(); ++j) v += mu[j] * ray_values.at(ids[basis[j]]);
  return v;
}

std::optional<SlicingFunction> find_slicing_function(const ConicalComplex& complex) {
  std::map<VertexId, std::size_t> var;
  for (const auto& [id, r] : complex.rays()) var.emplace(id, var.size());
  lp::System sys;
  sys.variables = var.size();
  for (const auto& [id, k] : var) {
    Point e(var.size());
    e[k] = 1;
    sys.add(e, lp::Relation::GreaterEqual, 1);
  }
  for (auto m : complex.maximal_cones()) {
    const auto& ids = complex.cone(m).rays;
    const auto gens = complex.generators(ids);
    const auto basis = linear_basis(gens);
    std::vector<Point> cols;
    for (auto b : basis) cols.push_back(gens[b]);
    const Matrix a = Matrix::from_columns(cols);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (std::find(basis.begin(), basis.end(), i) != basis.end()) continue;
      const auto mu = *solve(a, gens[i]);
      Point row(var.size());
      row[var[ids[i]]] = 1;
      for (std::size_t j = 0; j < basis.size(); ++j) row[var[ids[basis[j]]]] -= mu[j];
      sys.add(row, lp::Relation::Equal, 0);
    }
  }
  auto result = lp::solve(sys);
  if (!result.feasible()) return std::nullopt;
  SlicingFunction h;
  for (const auto& [id, k] : var) h.ray_values[id] = (*result.solution)[k];
  return h;
}

std::pair<ConicalComplex, SlicingFunction> cone_over(const PolyComplex& complex) {
  const std::size_t n = complex.ambient_dim();
  std::map<VertexId, Point> gens;
  SlicingFunction h;
  for (const auto& [id, p] : complex.vertices()) {
    Point g = p;
    g.push_back(1);
    gens[id] = std::move(g);
    h.ray_values[id] = 1;
  }
  std::vector<VertexSet> tops;
  for (auto m : complex.maximal_cells()) tops.push_back(complex.cell(m).vertices);
  Matrix basis(n + 1, n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) basis(r, c) = complex.integral().basis(r, c);
  }
  basis(n, n) = 1;
  return {ConicalComplex::assemble(n + 1, gens, tops, IntegralStructure{basis}), std::move(h)};
}

PolyComplex slice(const ConicalComplex& complex, const SlicingFunction& h) {
  validate_slicing(complex, h);
  std::map<VertexId, Point> vertices;
  for (const auto& [id, r] : complex.rays()) vertices[id] = Rational(1) / h.ray_values.at(id) * r.generator;
  std::vector<Cell> cells;
  for (const auto& c : complex.cones()) cells.push_back(Cell{c.rays, c.dim - 1});
  return PolyComplex::from_closed_cells(complex.ambient_dim(), std::move(vertices), std::move(cells), complex.integral());
}

ConicalSubdivision make_conical_subdivision(std::shared_ptr<const ConicalComplex> parent,
                                            const std::map<VertexId, Point>& generators,
                                            std::span<const VertexSet> maximal_cones) {
  std::map<VertexId, Point> used;
  for (const auto& c : maximal_cones) {
    for (auto id : c) used[id] = generators.at(id);
  }
  std::map<VertexSet, Matrix> lattices;
  if (!parent->cone_lattices().empty()) {
    for (VertexSet c : maximal_cones) {
      std::sort(c.begin(), c.end());
      std::vector<Point> g;
      for (auto id : c) g.push_back(used.at(id));
      auto carrier = parent->carrier_of(g);
      if (!carrier) throw Error(ErrorCode::CellNotContained, "cone " + describe(c) + " lies in no cone of the parent");
      lattices[c] = lattice::intersect_with_span(parent->lattice_of(parent->cone(*carrier).rays), g);
    }
  }
  ConicalSubdivision sub;
  sub.refined = ConicalComplex::assemble(parent->ambient_dim(), used, maximal_cones, parent->integral(),
                                         std::move(lattices));
  sub.carrier.resize(sub.refined.cones().size());
  for (std::size_t i = 0; i < sub.carrier.size(); ++i) {
    auto c = parent->carrier_of(sub.refined.generators(sub.refined.cone(i).rays));
    if (!c) {
      throw Error(ErrorCode::CellNotContained,
                  "cone " + describe(sub.refined.cone(i).rays) + " lies in no cone of the parent");
    }
    sub.carrier[i] = *c;
  }
  sub.parent = std::move(parent);
  return sub;
}

ConicalSubdivision trivial_conical_subdivision(std::shared_ptr<const ConicalComplex> parent) {
  ConicalSubdivision sub;
  sub.refined = *parent;
  sub.carrier.resize(parent->cones().size());
  for (std::size_t i = 0; i < sub.carrier.size(); ++i) sub.carrier[i] = i;
  sub.parent = std::move(parent);
  return sub;
}

ConicalSubdivision is_conical_subdivision(const ConicalComplex& candidate,
                                          std::shared_ptr<const ConicalComplex> parent) {
  if (candidate.ambient_dim() != parent->ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "complexes live in different ambient dimensions");
  }
  ConicalSubdivision sub;
  sub.carrier.resize(candidate.cones().size());
  for (std::size_t i = 0; i < candidate.cones().size(); ++i) {
    auto c = parent->carrier_of(candidate.generators(candidate.cone(i).rays));
    if (!c) {
      throw Error(ErrorCode::CellNotContained,
                  "cone " + describe(candidate.cone(i).rays) + " lies in no cone of the parent");
    }
    sub.carrier[i] = *c;
  }
  for (auto m : parent->maximal_cones()) {
    const auto gens = parent->generators(parent->cone(m).rays);
    const Point u = *positive_functional(gens);
    const auto q = scaled(gens, u);
    const AffineFrame frame(q);
    const Rational whole = polytope_volume(q, frame);
    Rational covered = 0;
    for (std::size_t i = 0; i < candidate.cones().size(); ++i) {
      if (sub.carrier[i] != m || candidate.cone(i).dim != parent->cone(m).dim) continue;
      covered += polytope_volume(scaled(candidate.generators(candidate.cone(i).rays), u), frame);
    }
    if (covered != whole) {
      throw Error(ErrorCode::NotComplete, "cone " + describe(parent->cone(m).rays) + " is covered with volume " +
                                              format_rational(covered) + " of " + format_rational(whole));
    }
  }
  sub.refined = candidate;
  sub.parent = std::move(parent);
  return sub;
}

bool is_homogeneous_lifting(const ConicalComplex& complex, const HomogeneousLifting& f) {
  std::map<VertexId, Point> rays = complex.generators();
  for (const auto& [id, g] : f.extra_rays) {
    if (rays.count(id) || !complex.contains(g) || is_zero(g)) return false;
    rays[id] = g;
  }
  for (const auto& [id, g] : rays) {
    if (!f.values.count(id)) return false;
  }
  std::optional<VertexId> below;
  homogeneous_pieces(complex, rays, f.values, below);
  return !below;
}

ConicalSubdivision induced_conical_subdivision(std::shared_ptr<const ConicalComplex> complex,
                                               const HomogeneousLifting& f) {
  std::map<VertexId, Point> rays = complex->generators();
  for (const auto& [id, g] : f.extra_rays) {
    if (rays.count(id)) throw Error(ErrorCode::DomainMismatch, "extra ray " + std::to_string(id) + " reuses an id");
    if (is_zero(g) || !complex->contains(g)) {
      throw Error(ErrorCode::DomainMismatch, "extra ray " + format_point(g) + " is outside the support");
    }
    rays[id] = g;
  }
  std::optional<VertexId> below;
  const auto pieces = homogeneous_pieces(*complex, rays, f.values, below);
  if (below) {
    throw Error(ErrorCode::NotConvexDown, "value on ray " + std::to_string(*below) + " lies below the hull of the others");
  }
  return make_conical_subdivision(std::move(complex), rays, pieces);
}

bool is_simplicial(const ConicalComplex& complex) {
  return std::all_of(complex.cones().begin(), complex.cones().end(), [](const Cone& c) { return c.simplicial(); });
}

std::set<Point, PointLess> ray_directions(const ConicalComplex& complex) {
  std::set<Point, PointLess> out;
  for (const auto& [id, r] : complex.rays()) out.insert(primitive_integer(r.generator));
  return out;
}

bool same_cones(const ConicalComplex& a, const ConicalComplex& b) {
  auto shapes = [](const ConicalComplex& c) {
    std::set<std::vector<Point>> out;
    for (const auto& cone : c.cones()) {
      std::vector<Point> dirs;
      for (auto id : cone.rays) dirs.push_back(primitive_integer(c.ray(id).generator));
      std::sort(dirs.begin(), dirs.end(), PointLess{});
      out.insert(std::move(dirs));
    }
    return out;
  };
  return shapes(a) == shapes(b);
}

ConicalExtension extend_conical_triangulation(std::shared_ptr<const ConicalComplex> complex, const SlicingFunction& h,
                                              const ConicalComplex& sub, const ConicalSubdivision& sub_triangulation,
                                              const HomogeneousLifting& f0, const GenericStrategy& strategy) {
  try {
    validate_slicing(*complex, h);
  } catch (const Error& e) {
    throw Error(ErrorCode::NoSlicingFunction, e.what());
  }
  for (const auto& [id, r] : sub.rays()) {
    if (!complex->has_ray(id) || complex->ray(id).generator != r.generator) {
      throw Error(ErrorCode::NotSubcomplex, "ray " + std::to_string(id) + " is not a ray of the complex");
    }
  }
  for (const auto& c : sub.cones()) {
    if (!complex->find_cone(c.rays)) throw Error(ErrorCode::NotSubcomplex, describe(c.rays) + " is not a cone");
  }
  if (!same_cones(sub_triangulation.base(), sub)) {
    throw Error(ErrorCode::DomainMismatch, "the triangulation does not subdivide the given subcomplex");
  }
  if (!is_simplicial(sub_triangulation.refined)) {
    throw Error(ErrorCode::InputNotSimplicial, "the subdivision of the subcomplex has non-simplicial cones");
  }

  // Heights of every ray that will appear.
  std::map<VertexId, Rational> height = h.ray_values;
  for (const auto& [id, r] : sub_triangulation.refined.rays()) {
    if (complex->has_ray(id)) {
      if (complex->ray(id).generator != r.generator) {
        throw Error(ErrorCode::DomainMismatch, "ray id " + std::to_string(id) + " names two different rays");
      }
      continue;
    }
    height[id] = evaluate(*complex, h.ray_values, r.generator);
  }
  auto restrict_h = [&](const ConicalComplex& c) {
    SlicingFunction out;
    for (const auto& [id, r] : c.rays()) out.ray_values[id] = height.at(id);
    return out;
  };
  const auto delta = std::make_shared<const PolyComplex>(slice(*complex, h));
  const auto delta0 = std::make_shared<const PolyComplex>(slice(sub, restrict_h(sub)));
  const PolyComplex delta0_refined = slice(sub_triangulation.refined, restrict_h(sub_triangulation.refined));
  const Subdivision delta0_sub = is_subdivision(delta0_refined, delta0);
  VerticialLifting f0_sliced;
  for (const auto& [id, r] : sub_triangulation.refined.rays()) {
    auto it = f0.values.find(id);
    if (it == f0.values.end()) throw Error(ErrorCode::DomainMismatch, "no value for ray " + std::to_string(id));
    f0_sliced[id] = it->second / height.at(id);
  }

  ConicalExtension out;
  out.sliced = extend_triangulation(delta, *delta0, delta0_sub, f0_sliced, strategy);

  std::map<VertexId, Point> gens = complex->generators();
  for (const auto& [id, r] : sub_triangulation.refined.rays()) gens.emplace(id, r.generator);
  const auto& tri = out.sliced.triangulation.refined;
  std::vector<VertexSet> tops;
  for (auto m : tri.maximal_cells()) tops.push_back(tri.cell(m).vertices);
  out.triangulation = make_conical_subdivision(complex, gens, tops);
  for (const auto& [id, p] : tri.vertices()) {
    out.lifting.values[id] = height.at(id) * out.sliced.composed.values.at(id);
  }

  auto expected = ray_directions(*complex);
  const auto extra = ray_directions(sub_triangulation.refined);
  expected.insert(extra.begin(), extra.end());
  if (ray_directions(out.triangulation.refined) != expected) {
    throw std::logic_error("conical extension changed the rays");
  }
  return out;
}

}  // namespace polytri
