#include "polytri/triangulation.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include "polytri/error.hpp"

namespace polytri {

namespace {

std::vector<Point> gather(const std::map<VertexId, Point>& points, const VertexSet& ids) {
  std::vector<Point> out;
  for (auto id : ids) out.push_back(points.at(id));
  return out;
}

// Calls visit on every k-subset of {0..n-1}, in lexicographic order.
void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const IndexSet&)>& visit) {
  if (k > n) return;
  IndexSet s(k);
  std::iota(s.begin(), s.end(), 0);
  while (true) {
    visit(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

// Orientation of the simplex (points in intrinsic coordinates of a d-space).
int orientation(std::span<const Point> pts) {
  const std::size_t d = pts.size() - 1;
  Matrix m(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) m(r, c) = pts[r + 1][c] - pts[0][c];
  }
  return sgn(determinant(m));
}

}  // namespace

bool is_simplicial(const PolyComplex& complex) {
  return std::all_of(complex.cells().begin(), complex.cells().end(), [](const Cell& c) { return c.simplicial(); });
}

bool is_simplicial(const Subdivision& subdivision) { return is_simplicial(subdivision.refined); }

VerticialLifting random_lifting(const PolyComplex& complex, std::mt19937_64& rng, std::int64_t bound) {
  std::uniform_int_distribution<std::int64_t> num(-bound, bound);
  std::uniform_int_distribution<std::int64_t> den(1, bound);
  VerticialLifting out;
  for (const auto& [id, p] : complex.vertices()) {
    const std::int64_t a = num(rng);
    const std::int64_t b = den(rng);
    Rational v(Integer(std::to_string(a)), Integer(std::to_string(b)));
    v.canonicalize();
    out[id] = v;
  }
  return out;
}

VerticialLifting generic_simplicial_lifting(std::shared_ptr<const PolyComplex> complex,
                                            const GenericStrategy& strategy) {
  if (const auto* r = std::get_if<RandomStrategy>(&strategy)) {
    std::mt19937_64 rng(r->seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
      auto f = random_lifting(*complex, rng, r->denominator_bound);
      if (is_simplicial(induced_subdivision(complex, f))) return f;
    }
    throw Error(ErrorCode::GenericityExhausted, "64 random liftings failed to induce a triangulation");
  }
  const auto& given = std::get<PullingStrategy>(strategy).order;
  std::vector<VertexId> order;
  for (auto v : given) {
    if (!complex->has_vertex(v)) throw Error(ErrorCode::DomainMismatch, "unknown vertex " + std::to_string(v));
    if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
  }
  for (const auto& [id, p] : complex->vertices()) {
    if (std::find(order.begin(), order.end(), id) == order.end()) order.push_back(id);
  }
  VerticialLifting f;
  for (const auto& [id, p] : complex->vertices()) f[id] = 0;
  Subdivision current = trivial_subdivision(complex);
  for (auto v : order) {
    if (is_simplicial(current)) break;
    VerticialLifting pull;
    for (const auto& [id, p] : complex->vertices()) pull[id] = id == v ? 1 : 0;
    const Rational eps = explicit_epsilon(complex, f, pull);
    f[v] += eps;
    current = refine_by(current, pull);
  }
  if (!same_cells(induced_subdivision(complex, f).refined, current.refined)) {
    throw std::logic_error("composed pulling lifting does not reproduce the pulling triangulation");
  }
  return f;
}

RegularityResult is_regular(const Subdivision& subdivision) {
  const auto& refined = subdivision.refined;
  const auto& parent = subdivision.base();
  std::vector<VertexId> vars;
  std::map<VertexId, std::size_t> var_of;
  for (const auto& [id, p] : refined.vertices()) {
    var_of[id] = vars.size();
    vars.push_back(id);
  }
  lp::System system;
  system.variables = vars.size();
  std::vector<FoldConstraint> folds;
  for (auto m : parent.maximal_cells()) {
    const auto ws = vertices_in(subdivision, m);
    for (std::size_t t = 0; t < refined.cells().size(); ++t) {
      if (subdivision.carrier[t] != m || refined.cell(t).dim != parent.cell(m).dim) continue;
      const auto& ids = refined.cell(t).vertices;
      const auto pts = refined.cell_points(t);
      std::vector<Point> basis;
      VertexSet basis_ids;
      for (auto i : affine_basis_indices(pts)) {
        basis.push_back(pts[i]);
        basis_ids.push_back(ids[i]);
      }
      for (auto w : ws) {
        if (std::find(basis_ids.begin(), basis_ids.end(), w) != basis_ids.end()) continue;
        const auto lambda = *barycentric(basis, refined.point(w));
        Point coef(vars.size());
        for (std::size_t j = 0; j < basis.size(); ++j) coef[var_of[basis_ids[j]]] += lambda[j];
        coef[var_of[w]] -= 1;
        const bool inside = std::binary_search(ids.begin(), ids.end(), w);
        lp::Constraint c{coef, inside ? lp::Relation::Equal : lp::Relation::GreaterEqual, inside ? 0 : 1};
        system.constraints.push_back(c);
        folds.push_back({m, ids, w, c, 0});
      }
    }
  }
  const auto result = lp::solve(system);
  if (result.feasible()) {
    RegularityCertificate cert;
    for (std::size_t i = 0; i < vars.size(); ++i) cert.lifting[vars[i]] = (*result.solution)[i];
    std::optional<Rational> margin;
    for (const auto& c : system.constraints) {
      if (c.relation != lp::Relation::GreaterEqual) continue;
      const Rational slack = dot(c.coefficients, *result.solution);
      if (!margin || slack < *margin) margin = slack;
    }
    cert.margin = margin.value_or(Rational(1));
    return cert;
  }
  NonRegularityWitness witness;
  witness.variables = vars;
  const auto& z = *result.farkas;
  for (std::size_t i = 0; i < folds.size(); ++i) {
    if (sgn(z[i]) == 0) continue;
    folds[i].multiplier = z[i];
    witness.infeasible_constraint_subset.push_back(folds[i]);
  }
  return witness;
}

bool verify_witness(const NonRegularityWitness& witness) {
  lp::System system;
  system.variables = witness.variables.size();
  std::vector<Rational> z;
  for (const auto& f : witness.infeasible_constraint_subset) {
    system.constraints.push_back(f.constraint);
    z.push_back(f.multiplier);
  }
  return !z.empty() && lp::verify_farkas(system, z);
}

bool verify_certificate(const Subdivision& subdivision, const RegularityCertificate& certificate) {
  if (sgn(certificate.margin) <= 0) return false;
  try {
    const auto f = minimal_extension(subdivision.parent, subdivision.refined.vertices(), certificate.lifting);
    return same_cells(induced_subdivision(f).refined, subdivision.refined);
  } catch (const Error&) {
    return false;
  }
}

Extension extend_triangulation(std::shared_ptr<const PolyComplex> complex, const PolyComplex& sub,
                               const Subdivision& sub_triangulation, const VerticialLifting& f0,
                               const GenericStrategy& strategy) {
  if (!is_subcomplex(sub, *complex)) throw Error(ErrorCode::NotSubcomplex, "boundary data is not a subcomplex");
  if (!same_cells(sub_triangulation.base(), sub)) {
    throw Error(ErrorCode::DomainMismatch, "the triangulation does not subdivide the given subcomplex");
  }
  if (!is_simplicial(sub_triangulation)) {
    throw Error(ErrorCode::InputNotSimplicial, "the subdivision of the subcomplex has non-simplex cells");
  }
  for (const auto& [id, p] : sub_triangulation.refined.vertices()) {
    if (!f0.count(id)) throw Error(ErrorCode::DomainMismatch, "no value for vertex " + std::to_string(id));
  }

  // f0 must induce the given triangulation.
  const auto sub_ptr = std::make_shared<const PolyComplex>(sub);
  bool induced = false;
  std::string reason;
  try {
    const auto g = minimal_extension(sub_ptr, sub_triangulation.refined.vertices(), f0);
    induced = same_cells(induced_subdivision(g).refined, sub_triangulation.refined);
    if (!induced) reason = "the lifting induces a different subdivision";
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnattainableValue) throw;
    reason = e.what();
  }
  if (!induced) {
    auto regular = is_regular(sub_triangulation);
    if (auto* w = std::get_if<NonRegularityWitness>(&regular)) {
      reason += "; no lifting induces it (" + std::to_string(w->infeasible_constraint_subset.size()) +
                " fold constraints are jointly infeasible)";
    }
    throw Error(ErrorCode::InputNotInduced, reason);
  }

  Extension out;
  Rational low = f0.begin()->second;
  for (const auto& [id, v] : f0) low = std::min(low, v);
  out.shift = sgn(low) > 0 ? Rational(0) : Rational(1) - low;

  // Extension by zero.
  std::map<VertexId, Point> points = complex->vertices();
  VerticialLifting values;
  for (const auto& [id, p] : points) values[id] = 0;
  for (const auto& [id, p] : sub_triangulation.refined.vertices()) {
    auto it = points.find(id);
    if (it != points.end() && it->second != p) {
      throw Error(ErrorCode::DomainMismatch, "vertex id " + std::to_string(id) + " names two different points");
    }
    points[id] = p;
    values[id] = f0.at(id) + out.shift;
  }
  try {
    out.extension_by_zero = minimal_extension(complex, points, values);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnattainableValue) throw;
    throw Error(ErrorCode::RestrictionMismatch, std::string("extension by zero does not attain f0: ") + e.what());
  }
  out.intermediate = induced_subdivision(out.extension_by_zero);

  // The extension restricts to f0 on the subcomplex.
  const PLLifting back = restrict(out.extension_by_zero, sub);
  if (!same_cells(induced_subdivision(back).refined, sub_triangulation.refined)) {
    throw Error(ErrorCode::RestrictionMismatch, "restricted extension induces a different subdivision");
  }
  for (const auto& [id, p] : sub_triangulation.refined.vertices()) {
    const Rational v = evaluate(back, p);
    if (v != values.at(id)) {
      throw Error(ErrorCode::RestrictionMismatch, "restricted extension has value " + format_rational(v) +
                                                      " instead of " + format_rational(values.at(id)) + " at " +
                                                      format_point(p));
    }
  }

  const auto level1 = std::make_shared<const PolyComplex>(out.intermediate.refined);
  out.generic = generic_simplicial_lifting(level1, strategy);
  out.triangulation = refine_by(out.intermediate, out.generic);
  out.epsilon = explicit_epsilon(out.extension_by_zero, out.generic);
  out.composed = combine(out.extension_by_zero, out.generic, out.epsilon);

  if (!is_simplicial(out.triangulation)) throw std::logic_error("extension is not simplicial");
  if (!same_cells(restrict_subdivision(out.triangulation, sub).refined, sub_triangulation.refined)) {
    throw Error(ErrorCode::RestrictionMismatch, "extension does not restrict to the given triangulation");
  }
  auto expected = complex->vertex_points();
  const auto extra = sub_triangulation.refined.vertex_points();
  expected.insert(extra.begin(), extra.end());
  if (out.triangulation.refined.vertex_points() != expected) throw std::logic_error("extension changed the vertices");
  if (!same_cells(induced_subdivision(out.composed).refined, out.triangulation.refined)) {
    throw std::logic_error("composed lifting does not induce the extension");
  }
  return out;
}

namespace {

// Triangulations of one full-dimensional point configuration (intrinsic
// coordinates) using all of its points, each a sorted list of simplices.
class CellEnumerator {
 public:
  explicit CellEnumerator(std::vector<Point> pts) : pts_(std::move(pts)), d_(pts_.front().size()) {
    const Hull hull = full_dimensional_hull(pts_);
    facets_ = hull.facets;
    const AffineFrame frame(pts_);
    total_ = polytope_volume(pts_, frame);
    for_each_subset(pts_.size(), d_ + 1, [&](const IndexSet& s) {
      const auto sp = points(s);
      if (affine_dimension(sp) == static_cast<int>(d_)) {
        simplices_.push_back(s);
        volumes_.push_back(simplex_volume(sp, frame));
      }
    });
  }

  std::vector<std::size_t> starts() const {
    Point centroid(d_);
    for (const auto& p : pts_) centroid = centroid + p;
    centroid = Rational(1, static_cast<unsigned long>(pts_.size())) * centroid;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < simplices_.size(); ++i) {
      const auto lambda = *barycentric(points(simplices_[i]), centroid);
      if (std::all_of(lambda.begin(), lambda.end(), [](const Rational& l) { return sgn(l) >= 0; })) out.push_back(i);
    }
    return out;
  }

  void run(std::size_t start, std::set<std::vector<std::size_t>>& found) {
    std::vector<std::size_t> chosen{start};
    search(chosen, volumes_[start], found);
  }

  const IndexSet& simplex(std::size_t i) const { return simplices_[i]; }

 private:
  std::vector<Point> points(const IndexSet& s) const {
    std::vector<Point> out;
    for (auto i : s) out.push_back(pts_[i]);
    return out;
  }

  bool on_boundary(const IndexSet& ridge) const {
    return std::any_of(facets_.begin(), facets_.end(), [&](const HullFacet& f) {
      return std::includes(f.points.begin(), f.points.end(), ridge.begin(), ridge.end());
    });
  }

  bool compatible(std::size_t a, std::size_t b) {
    const auto key = std::minmax(a, b);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    IndexSet shared;
    std::set_intersection(simplices_[a].begin(), simplices_[a].end(), simplices_[b].begin(), simplices_[b].end(),
                          std::back_inserter(shared));
    const bool ok = intersect_properly(points(simplices_[a]), points(simplices_[b]), points(shared));
    cache_.emplace(key, ok);
    return ok;
  }

  void search(std::vector<std::size_t>& chosen, const Rational& covered, std::set<std::vector<std::size_t>>& found) {
    if (covered == total_) {
      auto key = chosen;
      std::sort(key.begin(), key.end());
      found.insert(std::move(key));
      return;
    }
    // Smallest interior ridge used by exactly one chosen simplex.
    std::map<IndexSet, std::pair<int, std::size_t>> ridges;  // ridge -> (count, apex)
    for (auto c : chosen) {
      const auto& s = simplices_[c];
      for (std::size_t k = 0; k < s.size(); ++k) {
        IndexSet r;
        for (std::size_t j = 0; j < s.size(); ++j) {
          if (j != k) r.push_back(s[j]);
        }
        auto& e = ridges[r];
        e.first += 1;
        e.second = s[k];
      }
    }
    for (const auto& [ridge, e] : ridges) {
      if (e.first != 1 || on_boundary(ridge)) continue;
      auto with = [&](std::size_t apex) {
        auto p = points(ridge);
        p.insert(p.begin(), pts_[apex]);
        return orientation(p);
      };
      const int own = with(e.second);
      for (std::size_t i = 0; i < simplices_.size(); ++i) {
        const auto& s = simplices_[i];
        if (!std::includes(s.begin(), s.end(), ridge.begin(), ridge.end())) continue;
        std::size_t apex = 0;
        for (auto v : s) {
          if (!std::binary_search(ridge.begin(), ridge.end(), v)) apex = v;
        }
        if (with(apex) != -own) continue;
        if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
        if (!std::all_of(chosen.begin(), chosen.end(), [&](std::size_t c) { return compatible(c, i); })) continue;
        chosen.push_back(i);
        search(chosen, covered + volumes_[i], found);
        chosen.pop_back();
      }
      return;
    }
  }

  std::vector<Point> pts_;
  std::size_t d_;
  std::vector<HullFacet> facets_;
  Rational total_;
  std::vector<IndexSet> simplices_;
  std::vector<Rational> volumes_;
  std::map<std::pair<std::size_t, std::size_t>, bool> cache_;
};

std::vector<std::vector<VertexSet>> triangulate_cell(const PolyComplex& complex, std::size_t cell, unsigned jobs) {
  const auto& ids = complex.cell(cell).vertices;
  if (complex.cell(cell).simplicial()) return {{ids}};
  const auto pts = complex.cell_points(cell);
  const AffineFrame frame(pts);
  std::vector<Point> local;
  for (const auto& p : pts) local.push_back(*frame.coordinates(p));

  const CellEnumerator proto(local);
  const auto starts = proto.starts();
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(starts.size())));
  std::vector<std::set<std::vector<std::size_t>>> found(jobs);
  auto work = [&](unsigned w) {
    CellEnumerator e(local);
    for (std::size_t i = w; i < starts.size(); i += jobs) e.run(starts[i], found[w]);
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  std::set<std::vector<VertexSet>> all;
  for (const auto& part : found) {
    for (const auto& tri : part) {
      std::vector<VertexSet> cells;
      for (auto i : tri) {
        VertexSet s;
        for (auto k : proto.simplex(i)) s.push_back(ids[k]);
        std::sort(s.begin(), s.end());
        cells.push_back(std::move(s));
      }
      std::sort(cells.begin(), cells.end());
      all.insert(std::move(cells));
    }
  }
  return {all.begin(), all.end()};
}

// The cells a triangulation of one cell induces on a face of it.
std::set<VertexSet> trace_on(const std::vector<VertexSet>& tri, const VertexSet& face, int face_dim) {
  std::set<VertexSet> out;
  for (const auto& s : tri) {
    VertexSet t;
    std::set_intersection(s.begin(), s.end(), face.begin(), face.end(), std::back_inserter(t));
    if (static_cast<int>(t.size()) == face_dim + 1) out.insert(t);
  }
  return out;
}

}  // namespace

std::vector<Subdivision> enumerate_triangulations(std::shared_ptr<const PolyComplex> complex, unsigned jobs) {
  if (complex->vertices().size() > 12) {
    throw Error(ErrorCode::TooLarge, std::to_string(complex->vertices().size()) + " vertices exceed the limit of 12");
  }
  const auto tops = complex->maximal_cells();
  std::vector<std::vector<std::vector<VertexSet>>> options;
  for (auto m : tops) options.push_back(triangulate_cell(*complex, m, jobs));

  // Shared faces that are not simplices need matching traces.
  struct Overlap {
    std::size_t earlier;
    VertexSet face;
    int dim;
  };
  std::vector<std::vector<Overlap>> overlaps(tops.size());
  for (std::size_t i = 0; i < tops.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      VertexSet face;
      const auto& a = complex->cell(tops[i]).vertices;
      const auto& b = complex->cell(tops[j]).vertices;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(face));
      if (face.size() < 4) continue;
      const int dim = affine_dimension(gather(complex->vertices(), face));
      if (static_cast<int>(face.size()) > dim + 1) overlaps[i].push_back({j, face, dim});
    }
  }

  std::vector<std::vector<VertexSet>> results;
  std::vector<std::size_t> pick(tops.size());
  std::function<void(std::size_t)> combine_cells = [&](std::size_t i) {
    if (i == tops.size()) {
      std::vector<VertexSet> cells;
      for (std::size_t k = 0; k < tops.size(); ++k) {
        const auto& t = options[k][pick[k]];
        cells.insert(cells.end(), t.begin(), t.end());
      }
      std::sort(cells.begin(), cells.end());
      results.push_back(std::move(cells));
      return;
    }
    for (std::size_t o = 0; o < options[i].size(); ++o) {
      const auto& mine = options[i][o];
      const bool ok = std::all_of(overlaps[i].begin(), overlaps[i].end(), [&](const Overlap& ov) {
        return trace_on(mine, ov.face, ov.dim) == trace_on(options[ov.earlier][pick[ov.earlier]], ov.face, ov.dim);
      });
      if (!ok) continue;
      pick[i] = o;
      combine_cells(i + 1);
    }
  };
  combine_cells(0);
  std::sort(results.begin(), results.end());

  std::vector<Subdivision> out;
  for (const auto& cells : results) out.push_back(make_subdivision(complex, complex->vertices(), cells));
  return out;
}

Rational stability_radius(std::shared_ptr<const PolyComplex> complex, const VerticialLifting& c) {
  std::optional<Rational> best;
  for (auto m : complex->maximal_cells()) {
    const auto& ids = complex->cell(m).vertices;
    const auto d = static_cast<std::size_t>(complex->cell(m).dim);
    std::vector<Point> pts;
    std::vector<Rational> heights;
    for (auto id : ids) {
      pts.push_back(complex->point(id));
      heights.push_back(c.at(id));
    }
    const UpperHull hull = upper_hull(pts, heights);
    for (std::size_t p = 0; p < hull.pieces.size(); ++p) {
      const auto& piece = hull.pieces[p];
      const auto& verts = hull.piece_vertices[p];
      for_each_subset(verts.size(), d + 1, [&](const IndexSet& pick) {
        std::vector<Point> basis;
        for (auto k : pick) basis.push_back(pts[verts[k]]);
        if (affine_dimension(basis) != static_cast<int>(d)) return;
        for (std::size_t w = 0; w < pts.size(); ++w) {
          if (std::binary_search(piece.begin(), piece.end(), w)) continue;
          const auto lambda = *barycentric(basis, pts[w]);
          Rational value = 0;
          Rational weight = 1;
          for (std::size_t k = 0; k < pick.size(); ++k) {
            value += lambda[k] * heights[verts[pick[k]]];
            weight += abs(lambda[k]);
          }
          const Rational r = (value - heights[w]) / weight;
          if (!best || r < *best) best = r;
        }
      });
    }
  }
  return best.value_or(Rational(1));
}

}  // namespace polytri
