#include "polytri/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "polytri/error.hpp"

namespace polytri::io {

namespace {

const std::set<std::string, std::less<>> kKinds = {"complex", "conical", "subdivision", "lifting", "morphism", "report"};

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorCode::ParseError, message); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) fail(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

VertexId id_from_json(const Json& j) {
  if (!j.is_number_unsigned()) fail("vertex ids must be nonnegative integers");
  return j.get<VertexId>();
}

VertexSet ids_from_json(const Json& j) {
  if (!j.is_array()) fail("expected a list of ids");
  VertexSet out;
  for (const auto& x : j) out.push_back(id_from_json(x));
  std::sort(out.begin(), out.end());
  return out;
}

Json points_to_json(const std::map<VertexId, Point>& pts, const char* key) {
  Json out = Json::array();
  for (const auto& [id, p] : pts) out.push_back({{"id", id}, {key, to_json(p)}});
  return out;
}

std::map<VertexId, Point> points_from_json(const Json& j, const char* key) {
  if (!j.is_array()) fail("expected a list of labeled points");
  std::map<VertexId, Point> out;
  for (const auto& e : j) {
    const VertexId id = id_from_json(field(e, "id"));
    if (!out.emplace(id, point_from_json(field(e, key))).second) fail("repeated id " + std::to_string(id));
  }
  return out;
}

Json cells_to_json(std::vector<VertexSet> cells) {
  std::sort(cells.begin(), cells.end());
  Json out = Json::array();
  for (const auto& c : cells) out.push_back(c);
  return out;
}

std::vector<VertexSet> cells_from_json(const Json& j) {
  if (!j.is_array()) fail("expected a list of cells");
  std::vector<VertexSet> out;
  for (const auto& c : j) out.push_back(ids_from_json(c));
  return out;
}

std::vector<VertexSet> maximal_of(const PolyComplex& c) {
  std::vector<VertexSet> out;
  for (auto m : c.maximal_cells()) out.push_back(c.cell(m).vertices);
  return out;
}

std::vector<VertexSet> maximal_of(const ConicalComplex& c) {
  std::vector<VertexSet> out;
  for (auto m : c.maximal_cones()) out.push_back(c.cone(m).rays);
  return out;
}

Json values_to_json(const std::map<VertexId, Rational>& values) {
  Json out = Json::array();
  for (const auto& [id, v] : values) out.push_back({{"id", id}, {"value", to_json(v)}});
  return out;
}

std::map<VertexId, Rational> values_from_json(const Json& j) {
  if (!j.is_array()) fail("expected a list of values");
  std::map<VertexId, Rational> out;
  for (const auto& e : j) {
    const VertexId id = id_from_json(field(e, "id"));
    if (!out.emplace(id, rational_from_json(field(e, "value"))).second) fail("repeated id " + std::to_string(id));
  }
  return out;
}

// Rethrows library validation failures on input files as they are; only
// structural problems are parse errors.
template <class F>
auto parsing(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    fail(e.what());
  }
}

}  // namespace

Document parse(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  Document doc;
  const Json& kind = field(j, "kind");
  if (!kind.is_string() || !kKinds.count(kind.get<std::string>())) fail("unknown document kind");
  doc.kind = kind.get<std::string>();
  const Json& version = field(j, "version");
  if (!version.is_number_integer() || version.get<int>() != kVersion) fail("unsupported document version");
  doc.payload = field(j, "payload");
  return doc;
}

std::string dump(const Document& doc) {
  const Json j = {{"kind", doc.kind}, {"version", doc.version}, {"payload", doc.payload}};
  return j.dump(2) + "\n";
}

Document read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void write_file(const std::filesystem::path& path, const Document& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << dump(doc);
}

const Json& expect(const Document& doc, std::string_view kind) {
  if (doc.kind != kind) fail("expected a " + std::string(kind) + " document, got " + doc.kind);
  return doc.payload;
}

Json to_json(const Rational& r) { return format_rational(r); }

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) fail("rationals must be strings");
  return parse_rational(j.get<std::string>());
}

Json to_json(const Point& p) {
  Json out = Json::array();
  for (const auto& x : p) out.push_back(to_json(x));
  return out;
}

Point point_from_json(const Json& j) {
  if (!j.is_array()) fail("points must be lists");
  Point p;
  for (const auto& x : j) p.push_back(rational_from_json(x));
  return p;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(row);
  }
  return out;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) fail("matrices must be nonempty lists of rows");
  std::vector<Point> rows;
  for (const auto& r : j) rows.push_back(point_from_json(r));
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) fail("matrix rows differ in length");
  }
  return Matrix::from_rows(rows);
}

Json to_json(const PolyComplex& c) {
  Json out = {{"ambient_dim", c.ambient_dim()},
              {"vertices", points_to_json(c.vertices(), "point")},
              {"cells", cells_to_json(maximal_of(c))}};
  if (!(c.integral() == IntegralStructure::standard(c.ambient_dim()))) out["lattice"] = to_json(c.integral().basis);
  return out;
}

PolyComplex complex_from_json(const Json& j) {
  return parsing([&] {
    const auto n = field(j, "ambient_dim").get<std::size_t>();
    IntegralStructure integral = IntegralStructure::standard(n);
    if (j.contains("lattice")) integral.basis = matrix_from_json(j.at("lattice"));
    return build_complex(points_from_json(field(j, "vertices"), "point"), cells_from_json(field(j, "cells")), integral);
  });
}

Json to_json(const ConicalComplex& c, const SlicingFunction* h) {
  Json out = {{"ambient_dim", c.ambient_dim()},
              {"rays", points_to_json(c.generators(), "generator")},
              {"cones", cells_to_json(maximal_of(c))}};
  if (!(c.integral() == IntegralStructure::standard(c.ambient_dim()))) out["lattice"] = to_json(c.integral().basis);
  if (!c.cone_lattices().empty()) {
    Json lattices = Json::array();
    for (const auto& [cone, basis] : c.cone_lattices()) lattices.push_back({{"cone", cone}, {"basis", to_json(basis)}});
    out["cone_lattices"] = lattices;
  }
  if (h) out["slicing"] = values_to_json(h->ray_values);
  return out;
}

ConicalComplex conical_from_json(const Json& j) {
  return parsing([&] {
    const auto n = field(j, "ambient_dim").get<std::size_t>();
    IntegralStructure integral = IntegralStructure::standard(n);
    if (j.contains("lattice")) integral.basis = matrix_from_json(j.at("lattice"));
    std::map<VertexSet, Matrix> lattices;
    if (j.contains("cone_lattices")) {
      for (const auto& e : j.at("cone_lattices")) {
        lattices[ids_from_json(field(e, "cone"))] = matrix_from_json(field(e, "basis"));
      }
    }
    return ConicalComplex::build(n, points_from_json(field(j, "rays"), "generator"), cells_from_json(field(j, "cones")),
                                 integral, std::move(lattices));
  });
}

std::optional<SlicingFunction> slicing_from_json(const Json& j) {
  if (!j.contains("slicing")) return std::nullopt;
  return SlicingFunction{values_from_json(j.at("slicing"))};
}

Json to_json(const Subdivision& s) {
  Json carriers = Json::array();
  for (std::size_t i = 0; i < s.refined.cells().size(); ++i) {
    carriers.push_back({{"cell", s.refined.cell(i).vertices}, {"carrier", s.base().cell(s.carrier[i]).vertices}});
  }
  return {{"type", "compact"}, {"parent", to_json(s.base())}, {"refined", to_json(s.refined)}, {"carriers", carriers}};
}

Subdivision subdivision_from_json(const Json& j) {
  if (field(j, "type") != "compact") fail("expected a compact subdivision");
  auto parent = std::make_shared<const PolyComplex>(complex_from_json(field(j, "parent")));
  return is_subdivision(complex_from_json(field(j, "refined")), parent);
}

Json to_json(const ConicalSubdivision& s) {
  Json carriers = Json::array();
  for (std::size_t i = 0; i < s.refined.cones().size(); ++i) {
    carriers.push_back({{"cone", s.refined.cone(i).rays}, {"carrier", s.base().cone(s.carrier[i]).rays}});
  }
  return {{"type", "conical"}, {"parent", to_json(s.base())}, {"refined", to_json(s.refined)}, {"carriers", carriers}};
}

ConicalSubdivision conical_subdivision_from_json(const Json& j) {
  if (field(j, "type") != "conical") fail("expected a conical subdivision");
  auto parent = std::make_shared<const ConicalComplex>(conical_from_json(field(j, "parent")));
  return is_conical_subdivision(conical_from_json(field(j, "refined")), parent);
}

Json to_json(const VerticialLifting& f) { return {{"values", values_to_json(f)}}; }

Json to_json(const HomogeneousLifting& f) {
  Json out = {{"values", values_to_json(f.values)}};
  if (!f.extra_rays.empty()) out["extra_rays"] = points_to_json(f.extra_rays, "generator");
  return out;
}

VerticialLifting lifting_from_json(const Json& j) {
  if (j.contains("extra_rays")) fail("a verticial lifting has no extra rays");
  return values_from_json(field(j, "values"));
}

HomogeneousLifting homogeneous_lifting_from_json(const Json& j) {
  HomogeneousLifting f{values_from_json(field(j, "values")), {}};
  if (j.contains("extra_rays")) f.extra_rays = points_from_json(j.at("extra_rays"), "generator");
  return f;
}

PointLifting point_lifting_from_json(const Json& j) {
  PointLifting f{values_from_json(field(j, "values")), {}};
  if (j.contains("extra_points")) f.extra_points = points_from_json(j.at("extra_points"), "point");
  return f;
}

Json to_json(const ConicalMorphism& f) {
  Json multipliers = Json::array();
  for (const auto& k : f.target.multipliers) multipliers.push_back(k.get_str());
  return {{"source", to_json(*f.source)},
          {"target", {{"n", f.target.n}, {"multipliers", multipliers}}},
          {"images", points_to_json(f.ray_images, "image")}};
}

ConicalMorphism morphism_from_json(const Json& j) {
  return parsing([&] {
    auto source = std::make_shared<const ConicalComplex>(conical_from_json(field(j, "source")));
    const Json& t = field(j, "target");
    OrthantBase target = OrthantBase::standard(field(t, "n").get<std::size_t>());
    if (t.contains("multipliers")) {
      target.multipliers.clear();
      for (const auto& k : t.at("multipliers")) {
        const Rational q = rational_from_json(k);
        if (q.get_den() != 1) fail("multipliers must be integers");
        target.multipliers.push_back(q.get_num());
      }
    }
    return make_morphism(std::move(source), std::move(target), points_from_json(field(j, "images"), "image"));
  });
}

Json to_json(const RegularityCertificate& c) {
  return {{"type", "regularity_certificate"}, {"lifting", values_to_json(c.lifting)}, {"margin", to_json(c.margin)}};
}

Json to_json(const NonRegularityWitness& w) {
  Json constraints = Json::array();
  for (const auto& c : w.infeasible_constraint_subset) {
    constraints.push_back({{"parent_cell", c.parent_cell},
                           {"cell", c.cell},
                           {"vertex", c.vertex},
                           {"coefficients", to_json(c.constraint.coefficients)},
                           {"relation", c.constraint.relation == lp::Relation::Equal ? "=" : ">="},
                           {"rhs", to_json(c.constraint.rhs)},
                           {"multiplier", to_json(c.multiplier)}});
  }
  return {{"type", "non_regularity_witness"}, {"variables", w.variables}, {"constraints", constraints}};
}

Json to_json(const SemistabilityReport& r) {
  Json indices = Json::array();
  for (const auto& [cone, index] : r.maximal_indices) indices.push_back({{"cone", cone}, {"index", index.get_str()}});
  return {{"type", "semistability"},
          {"equidimensional", {{"holds", r.equidimensional}, {"witnesses", r.equidimensional_witnesses}}},
          {"reduced", {{"holds", r.reduced}, {"witnesses", r.reduced_witnesses}}},
          {"codim1_semistable", {{"holds", r.codim1_semistable}, {"witnesses", r.codim1_witnesses}}},
          {"simplicial", r.simplicial},
          {"base_nonsingular", r.base_nonsingular},
          {"maximal_cone_indices", indices},
          {"verdict", to_string(r.verdict)}};
}

}  // namespace polytri::io
