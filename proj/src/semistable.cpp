#include "polytri/semistable.hpp"

#include <algorithm>
#include <set>
#include <sstream>

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

bool is_zero(const Point& p) {
  return std::all_of(p.begin(), p.end(), [](const Rational& x) { return sgn(x) == 0; });
}

// Coordinates where p is nonzero.
std::vector<std::size_t> support(const Point& p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (sgn(p[i]) != 0) out.push_back(i);
  }
  return out;
}

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

// Image of x under the linear map fixed by gens[i] -> images[i] on their span.
std::optional<Point> linear_image(std::span<const Point> gens, std::span<const Point> images, const Point& x) {
  const auto basis = linear_basis(gens);
  std::vector<Point> cols;
  for (auto b : basis) cols.push_back(gens[b]);
  const auto mu = solve(Matrix::from_columns(cols), x);
  if (!mu) return std::nullopt;
  Point y(images.front().size());
  for (std::size_t j = 0; j < basis.size(); ++j) y = y + (*mu)[j] * images[basis[j]];
  return y;
}

std::vector<Point> images_of(const ConicalMorphism& f, const VertexSet& rays) {
  std::vector<Point> out;
  for (auto id : rays) out.push_back(f.ray_images.at(id));
  return out;
}

// Lattice of a cone of a subdivision of f.source: that of its carrier,
// intersected with the span of the cone.
Matrix lattice_for(const ConicalMorphism& f, const ConicalSubdivision& sub, std::size_t cone) {
  const auto gens = sub.refined.generators(sub.refined.cone(cone).rays);
  const auto& carrier = f.source->cone(sub.carrier[cone]).rays;
  return lattice::intersect_with_span(f.source->lattice_of(carrier), gens);
}

Integer as_integer(const Rational& r) {
  if (r.get_den() != 1) throw std::logic_error("index is not an integer: " + format_rational(r));
  return r.get_num();
}

// Whether e_i lies in the cone spanned by the given vectors.
bool cone_contains(std::span<const Point> vectors, const Point& target) {
  lp::System sys;
  sys.variables = vectors.size();
  for (std::size_t r = 0; r < target.size(); ++r) {
    Point row(vectors.size());
    for (std::size_t j = 0; j < vectors.size(); ++j) row[j] = vectors[j][r];
    sys.add(std::move(row), lp::Relation::Equal, target[r]);
  }
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    Point e(vectors.size());
    e[j] = 1;
    sys.add(std::move(e), lp::Relation::GreaterEqual, 0);
  }
  return lp::solve(sys).feasible();
}

}  // namespace

OrthantBase OrthantBase::standard(std::size_t n) { return {n, std::vector<Integer>(n, 1)}; }

Matrix OrthantBase::lattice() const {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(multipliers[i]);
  return m;
}

ConicalComplex OrthantBase::complex() const {
  std::map<VertexId, Point> gens;
  VertexSet all;
  for (std::size_t i = 0; i < n; ++i) {
    Point e(n);
    e[i] = 1;
    gens[static_cast<VertexId>(i)] = e;
    all.push_back(static_cast<VertexId>(i));
  }
  const VertexSet tops[] = {all};
  return ConicalComplex::assemble(n, gens, tops, IntegralStructure{lattice()});
}

ConicalMorphism make_morphism(std::shared_ptr<const ConicalComplex> source, OrthantBase target,
                              std::map<VertexId, Point> ray_images) {
  const std::size_t n = target.n;
  if (target.multipliers.size() != n) throw Error(ErrorCode::DimensionMismatch, "one multiplier per coordinate");
  for (const auto& k : target.multipliers) {
    if (sgn(k) <= 0) throw Error(ErrorCode::NonPositiveMultiplier, "multiplier " + k.get_str());
  }
  for (const auto& [id, r] : source->rays()) {
    auto it = ray_images.find(id);
    if (it == ray_images.end()) throw Error(ErrorCode::InvalidMorphism, "no image for ray " + std::to_string(id));
    if (it->second.size() != n) throw Error(ErrorCode::DimensionMismatch, "image of ray " + std::to_string(id));
    for (const auto& c : it->second) {
      if (sgn(c) < 0) {
        throw Error(ErrorCode::InvalidMorphism,
                    "ray " + std::to_string(id) + " maps to " + format_point(it->second) + " outside the orthant");
      }
    }
  }
  for (auto it = ray_images.begin(); it != ray_images.end();) {
    it = source->has_ray(it->first) ? std::next(it) : ray_images.erase(it);
  }
  ConicalMorphism f{std::move(source), std::move(target), std::move(ray_images)};

  const Matrix target_lattice = f.target.lattice();
  bool full_rank = false;
  std::vector<bool> hit(n, false);
  for (auto m : f.source->maximal_cones()) {
    const auto& ids = f.source->cone(m).rays;
    const auto gens = f.source->generators(ids);
    const auto imgs = images_of(f, ids);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (*linear_image(gens, imgs, gens[i]) != imgs[i]) {
        throw Error(ErrorCode::InvalidMorphism, "ray images are not linear on cone " + describe(ids));
      }
    }
    const Matrix l = f.source->lattice_of(ids);
    for (std::size_t c = 0; c < l.cols(); ++c) {
      Point x(l.rows());
      for (std::size_t r = 0; r < l.rows(); ++r) x[r] = l(r, c);
      const Point y = *linear_image(gens, imgs, x);
      if (!lattice::contains(target_lattice, y)) {
        throw Error(ErrorCode::InvalidMorphism, "lattice point " + format_point(x) + " of cone " + describe(ids) +
                                                    " maps to " + format_point(y) + " off the target lattice");
      }
    }
    if (rank(Matrix::from_columns(imgs)) == n) full_rank = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (hit[i]) continue;
      Point e(n);
      e[i] = 1;
      hit[i] = cone_contains(imgs, e);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!hit[i]) throw Error(ErrorCode::InvalidMorphism, "edge " + std::to_string(i) + " of the orthant is not in the image");
  }
  if (n > 0 && !full_rank) throw Error(ErrorCode::InvalidMorphism, "the image is not full-dimensional");
  return f;
}

Point image(const ConicalMorphism& f, const Point& x) {
  if (is_zero(x)) return Point(f.target.n);
  const Point pts[] = {x};
  auto c = f.source->carrier_of(pts);
  if (!c) throw Error(ErrorCode::CellNotContained, "point " + format_point(x) + " is outside the source");
  const auto& ids = f.source->cone(*c).rays;
  return *linear_image(f.source->generators(ids), images_of(f, ids), x);
}

ConicalMorphism base_change(const ConicalMorphism& f, const std::vector<Integer>& k) {
  if (k.size() != f.target.n) throw Error(ErrorCode::DimensionMismatch, "one multiplier per coordinate of the base");
  for (const auto& ki : k) {
    if (sgn(ki) <= 0) throw Error(ErrorCode::NonPositiveMultiplier, "multiplier " + ki.get_str() + " is not positive");
  }
  if (std::all_of(k.begin(), k.end(), [](const Integer& ki) { return ki == 1; })) return f;

  OrthantBase target = f.target;
  for (std::size_t i = 0; i < k.size(); ++i) target.multipliers[i] *= k[i];
  const std::size_t n = target.n;
  std::map<VertexSet, Matrix> overrides;
  std::vector<VertexSet> tops;
  for (auto m : f.source->maximal_cones()) {
    const auto& ids = f.source->cone(m).rays;
    tops.push_back(ids);
    const auto gens = f.source->generators(ids);
    const auto imgs = images_of(f, ids);
    const Matrix l = f.source->lattice_of(ids);
    // A: images of the lattice basis, in coordinates of the new target lattice.
    Matrix a(n, l.cols());
    for (std::size_t c = 0; c < l.cols(); ++c) {
      Point x(l.rows());
      for (std::size_t r = 0; r < l.rows(); ++r) x[r] = l(r, c);
      const Point y = *linear_image(gens, imgs, x);
      for (std::size_t r = 0; r < n; ++r) a(r, c) = y[r] / Rational(target.multipliers[r]);
    }
    overrides[ids] = l * lattice::integral_preimage(a);
  }
  auto source = std::make_shared<const ConicalComplex>(ConicalComplex::assemble(
      f.source->ambient_dim(), f.source->generators(), tops, f.source->integral(), std::move(overrides)));
  return ConicalMorphism{std::move(source), std::move(target), f.ray_images};
}

Integer cone_index(std::span<const Point> rays, const Matrix& lattice_basis) {
  if (rays.empty()) return 1;
  if (rank(Matrix::from_columns(rays)) != rays.size()) {
    throw Error(ErrorCode::NotSimplicial, "the ray generators are linearly dependent");
  }
  const Matrix l = lattice::intersect_with_span(lattice_basis, rays);
  std::vector<Point> prims;
  for (const auto& r : rays) prims.push_back(lattice::primitive_vector(l, r));
  return as_integer(lattice::index_of(l, prims));
}

Integer cone_index(const ConicalComplex& complex, const VertexSet& cone) {
  const auto gens = complex.generators(cone);
  if (rank(Matrix::from_columns(gens)) != gens.size()) {
    throw Error(ErrorCode::NotSimplicial, "cone " + describe(cone) + " is not simplicial");
  }
  return cone_index(gens, complex.lattice_of(cone));
}

PreimageSkeleton preimage_skeleton(const ConicalMorphism& f) {
  const std::size_t n = f.target.n;
  std::vector<VertexSet> skeleton;
  std::vector<std::vector<VertexSet>> pieces(n);
  for (const auto& cone : f.source->cones()) {
    std::set<std::size_t> coords;
    for (auto id : cone.rays) {
      for (auto i : support(f.ray_images.at(id))) coords.insert(i);
    }
    if (coords.size() > 1) continue;
    skeleton.push_back(cone.rays);
    for (std::size_t i = 0; i < n; ++i) {
      if (coords.empty() || coords.count(i)) pieces[i].push_back(cone.rays);
    }
  }
  PreimageSkeleton out{conical_subcomplex(*f.source, skeleton), {}};
  for (const auto& p : pieces) out.pieces.push_back(conical_subcomplex(*f.source, p));
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Semistable:
      return "semistable";
    case Verdict::NearlySemistable:
      return "nearly_semistable";
    case Verdict::Neither:
      break;
  }
  return "neither";
}

SemistabilityReport check_nearly_semistable(const ConicalMorphism& f, const ConicalSubdivision& subdivision) {
  if (!same_cones(subdivision.base(), *f.source)) {
    throw Error(ErrorCode::IncompatibleSubdivision, "the subdivision is not of the source complex");
  }
  const auto& refined = subdivision.refined;
  // Re-anchor carriers in f.source, whose lattice is authoritative.
  ConicalSubdivision sub{refined, f.source, {}};
  for (const auto& cone : refined.cones()) {
    auto c = f.source->carrier_of(refined.generators(cone.rays));
    if (!c) throw Error(ErrorCode::IncompatibleSubdivision, "cone " + describe(cone.rays) + " lies in no source cone");
    sub.carrier.push_back(*c);
  }
  std::map<VertexId, Point> images;
  for (const auto& [id, r] : refined.rays()) {
    images[id] = image(f, r.generator);
    if (std::any_of(images[id].begin(), images[id].end(), [](const Rational& c) { return sgn(c) < 0; })) {
      throw Error(ErrorCode::IncompatibleSubdivision, "ray " + std::to_string(id) + " maps outside the orthant");
    }
  }

  SemistabilityReport report;
  for (const auto& [id, r] : refined.rays()) {
    const auto s = support(images[id]);
    if (s.size() > 1) {
      report.equidimensional = false;
      report.equidimensional_witnesses.push_back("ray " + std::to_string(id) + " maps to " + format_point(images[id]) +
                                                 ", inside a cone of dimension " + std::to_string(s.size()));
      continue;
    }
    if (s.empty()) continue;
    const std::size_t i = s.front();
    const auto idx = refined.find_cone({id});
    const Point prim = lattice::primitive_vector(lattice_for(f, sub, *idx), r.generator);
    const Point y = image(f, prim);
    if (y[i] != Rational(f.target.multipliers[i])) {
      report.reduced = false;
      report.reduced_witnesses.push_back("primitive generator " + format_point(prim) + " of ray " + std::to_string(id) +
                                         " maps to " + format_point(y) + ", not to the generator of edge " +
                                         std::to_string(i));
    }
  }
  for (std::size_t c = 0; c < refined.cones().size(); ++c) {
    const auto& cone = refined.cone(c);
    std::set<std::size_t> coords;
    for (auto id : cone.rays) {
      for (auto i : support(images[id])) coords.insert(i);
    }
    if (coords.size() > 1) continue;
    if (!cone.simplicial()) {
      report.codim1_semistable = false;
      report.codim1_witnesses.push_back("cone " + describe(cone.rays) + " over the 1-skeleton is not simplicial");
      continue;
    }
    const Integer index = cone_index(refined.generators(cone.rays), lattice_for(f, sub, c));
    if (index != 1) {
      report.codim1_semistable = false;
      report.codim1_witnesses.push_back("cone " + describe(cone.rays) + " over the 1-skeleton has index " +
                                        index.get_str());
    }
  }
  report.simplicial = is_simplicial(refined);
  const auto base = f.target.complex();
  report.base_nonsingular = cone_index(base, base.cone(base.maximal_cones().front()).rays) == 1;
  bool unimodular = true;
  for (auto m : refined.maximal_cones()) {
    const auto& cone = refined.cone(m);
    Integer index = 0;
    if (cone.simplicial()) index = cone_index(refined.generators(cone.rays), lattice_for(f, sub, m));
    if (index != 1) unimodular = false;
    report.maximal_indices.emplace_back(cone.rays, index);
  }
  if (report.equidimensional && report.reduced && report.codim1_semistable && report.simplicial &&
      report.base_nonsingular) {
    report.verdict = unimodular ? Verdict::Semistable : Verdict::NearlySemistable;
  }
  return report;
}

BoundaryData trivial_boundary_data(const ConicalMorphism& f, std::vector<Integer> multipliers) {
  const auto skeleton = preimage_skeleton(f);
  BoundaryData data{std::move(multipliers), {}};
  for (const auto& piece : skeleton.pieces) {
    auto p = std::make_shared<const ConicalComplex>(piece);
    HomogeneousLifting zero;
    for (const auto& [id, r] : piece.rays()) zero.values[id] = 0;
    data.pieces.push_back({trivial_conical_subdivision(std::move(p)), std::move(zero)});
  }
  return data;
}

Reduction weak_to_nearly_semistable(const ConicalMorphism& f, const BoundaryData& data) {
  const std::size_t n = f.target.n;
  if (data.pieces.size() != n) throw Error(ErrorCode::DimensionMismatch, "one boundary piece per edge of the base");
  ConicalMorphism f1 = base_change(f, data.multipliers);
  const auto skeleton = preimage_skeleton(f1);

  SlicingFunction h;
  for (const auto& [id, r] : f1.source->rays()) {
    Rational v = 0;
    for (const auto& c : f1.ray_images.at(id)) v += c;
    if (sgn(v) == 0) {
      throw Error(ErrorCode::NoSlicingFunction, "ray " + std::to_string(id) + " maps to the origin");
    }
    h.ray_values[id] = v;
  }

  std::map<VertexId, Point> gens = f1.source->generators();
  std::vector<VertexSet> tops;
  HomogeneousLifting f0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& piece = data.pieces[i];
    const auto& expected = skeleton.pieces[i];
    if (expected.cones().empty()) continue;
    if (!same_cones(piece.triangulation.base(), expected)) {
      throw Error(ErrorCode::DomainMismatch, "boundary piece " + std::to_string(i) + " does not cover the preimage of edge " +
                                                 std::to_string(i));
    }
    const auto& tri = piece.triangulation.refined;
    if (!is_simplicial(tri)) {
      throw Error(ErrorCode::InputNotSimplicial, "boundary piece " + std::to_string(i) + " is not simplicial");
    }
    auto piece_parent = std::make_shared<const ConicalComplex>(expected);
    ConicalSubdivision induced;
    try {
      induced = induced_conical_subdivision(piece_parent, piece.lifting);
    } catch (const Error& e) {
      throw Error(ErrorCode::BoundaryNotInduced, "boundary piece " + std::to_string(i) + ": " + e.what());
    }
    if (!same_cones(induced.refined, tri)) {
      throw Error(ErrorCode::BoundaryNotInduced,
                  "boundary piece " + std::to_string(i) + " is not the subdivision induced by its lifting");
    }
    const auto carriers = make_conical_subdivision(f1.source, tri.generators(), [&] {
      std::vector<VertexSet> t;
      for (auto m : tri.maximal_cones()) t.push_back(tri.cone(m).rays);
      return t;
    }());
    for (auto m : tri.maximal_cones()) {
      const auto& cone = tri.cone(m);
      const Integer index = cone_index(tri.generators(cone.rays), lattice_for(f1, carriers, carriers.refined.find_cone(cone.rays).value()));
      if (index != 1) {
        throw Error(ErrorCode::BoundaryNotIndexOne, "cone " + describe(cone.rays) + " of boundary piece " +
                                                        std::to_string(i) + " has index " + index.get_str());
      }
      tops.push_back(cone.rays);
    }
    for (const auto& [id, r] : tri.rays()) {
      auto it = gens.find(id);
      if (it != gens.end() && it->second != r.generator) {
        throw Error(ErrorCode::DomainMismatch, "ray id " + std::to_string(id) + " names two different rays");
      }
      gens[id] = r.generator;
      auto v = piece.lifting.values.find(id);
      if (v == piece.lifting.values.end()) {
        throw Error(ErrorCode::BoundaryNotInduced, "no lifting value on ray " + std::to_string(id));
      }
      f0.values[id] = v->second;
    }
  }
  std::map<VertexId, Point> used;
  for (const auto& t : tops) {
    for (auto id : t) used[id] = gens.at(id);
  }
  for (const auto& [id, g] : used) {
    if (!f1.source->has_ray(id)) {
      Rational v = 0;
      for (const auto& c : image(f1, g)) v += c;
      h.ray_values.emplace(id, v);
    }
  }
  auto skel = std::make_shared<const ConicalComplex>(skeleton.skeleton);
  const ConicalSubdivision sub_tri = make_conical_subdivision(skel, used, tops);
  auto source_h = h;
  for (auto it = source_h.ray_values.begin(); it != source_h.ray_values.end();) {
    it = f1.source->has_ray(it->first) ? std::next(it) : source_h.ray_values.erase(it);
  }
  ConicalExtension ext = extend_conical_triangulation(f1.source, source_h, *skel, sub_tri, f0);
  SemistabilityReport report = check_nearly_semistable(f1, ext.triangulation);
  return {std::move(f1), ext.triangulation, std::move(report), std::move(ext)};
}

BoundaryPiece find_index_one_triangulation(std::shared_ptr<const ConicalComplex> piece) {
  if (piece->dimension() > 3) {
    throw Error(ErrorCode::UnsupportedDimension, "the search handles pieces of dimension at most 3");
  }
  if (piece->rays().size() > 12) throw Error(ErrorCode::SearchExhausted, "too many rays for the exhaustive search");
  auto h = find_slicing_function(*piece);
  if (!h) throw Error(ErrorCode::NoSlicingFunction, "the piece admits no slicing function");
  auto delta = std::make_shared<const PolyComplex>(slice(*piece, *h));
  for (const auto& t : enumerate_triangulations(delta)) {
    std::vector<VertexSet> tops;
    for (auto m : t.refined.maximal_cells()) tops.push_back(t.refined.cell(m).vertices);
    ConicalSubdivision tri = make_conical_subdivision(piece, piece->generators(), tops);
    const bool unimodular = std::all_of(tops.begin(), tops.end(), [&](const VertexSet& c) {
      return cone_index(piece->generators(c), piece->lattice_of(c)) == 1;
    });
    if (!unimodular) continue;
    auto regular = is_regular(t);
    if (auto cert = std::get_if<RegularityCertificate>(&regular)) {
      HomogeneousLifting lifting;
      for (const auto& [id, v] : cert->lifting) lifting.values[id] = h->ray_values.at(id) * v;
      return {std::move(tri), std::move(lifting)};
    }
  }
  throw Error(ErrorCode::SearchExhausted, "no regular index-1 triangulation uses only the existing rays");
}

}  // namespace polytri
