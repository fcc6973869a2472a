#include "oracles.hpp"
#include "polytri/conical.hpp"
#include "polytri/fixtures.hpp"
#include "polytri/lattice.hpp"
#include "support.hpp"

using namespace polytri;
namespace fx = polytri::fixtures;

namespace {

std::shared_ptr<const ConicalComplex> cone_of_square() {
  return std::make_shared<const ConicalComplex>(cone_over(*fx::square()).first);
}

std::set<VertexSet> maximal_cones(const ConicalComplex& c) {
  std::set<VertexSet> out;
  for (auto m : c.maximal_cones()) out.insert(c.cone(m).rays);
  return out;
}

}  // namespace

TEST_CASE("cone over a square and its slice") {
  const auto [cone, h] = cone_over(*fx::square());
  CHECK(cone.rays().size() == 4);
  CHECK(cone.maximal_cones().size() == 1);
  CHECK(cone.dimension() == 3);
  CHECK(cone.cones().size() == 4 + 4 + 1);
  for (const auto& [id, v] : h.ray_values) CHECK(v == 1);
  const PolyComplex s = slice(cone, h);
  CHECK(s.ambient_dim() == 3);
  CHECK(s.maximal_cells().size() == 1);
  const std::set<Point, PointLess> lifted = {{0, 0, 1}, {0, 1, 1}, {1, 1, 1}, {1, 0, 1}};
  CHECK(s.vertex_points() == lifted);
  const std::set<Point, PointLess> dirs = {{0, 0, 1}, {0, 1, 1}, {1, 1, 1}, {1, 0, 1}};
  CHECK(ray_directions(cone) == dirs);
  CHECK(cone.contains(Point{1, 1, 2}));
  CHECK_FALSE(cone.contains(Point{2, 0, 1}));
}

TEST_CASE("conical complexes reject invalid cones") {
  const std::map<VertexId, Point> line = {{0, {1}}, {1, {-1}}};
  const std::vector<VertexSet> both = {{0, 1}};
  CHECK_ERROR(ConicalComplex::build(1, line, both, IntegralStructure::standard(1)), ErrorCode::NotPointed);
  const std::vector<VertexSet> separate = {{0}, {1}};
  CHECK(ConicalComplex::build(1, line, separate, IntegralStructure::standard(1)).maximal_cones().size() == 2);

  const std::map<VertexId, Point> parallel = {{0, {1, 0}}, {1, {2, 0}}};
  const std::vector<VertexSet> one = {{0}};
  CHECK_ERROR(ConicalComplex::build(2, parallel, one, IntegralStructure::standard(2)), ErrorCode::DegenerateInput);

  const std::map<VertexId, Point> zero = {{0, {0, 0}}};
  CHECK_ERROR(ConicalComplex::build(2, zero, one, IntegralStructure::standard(2)), ErrorCode::DegenerateInput);

  const std::map<VertexId, Point> three = {{0, {1, 0}}, {1, {1, 1}}, {2, {0, 1}}};
  const std::vector<VertexSet> redundant = {{0, 1, 2}};
  CHECK_ERROR(ConicalComplex::build(2, three, redundant, IntegralStructure::standard(2)), ErrorCode::RedundantVertex);
  const std::vector<VertexSet> overlapping = {{0, 2}, {1}};
  CHECK_ERROR(ConicalComplex::build(2, three, overlapping, IntegralStructure::standard(2)),
              ErrorCode::NotIntersectionClosed);
}

TEST_CASE("slicing functions") {
  const auto c = cone_of_square();
  for (const auto& cc : fx::conical_cases()) {
    const auto h = find_slicing_function(*cc.complex);
    REQUIRE(h);
    CHECK_NOTHROW(validate_slicing(*cc.complex, *h));
    CHECK_NOTHROW(validate_slicing(*cc.complex, cc.h));
  }
  SlicingFunction h{{{0, 1}, {1, 1}, {2, 1}, {3, 0}}};
  CHECK_ERROR(validate_slicing(*c, h), ErrorCode::NotSlicing);
  h.ray_values[3] = 2;
  CHECK_ERROR(validate_slicing(*c, h), ErrorCode::NotSlicing);
  CHECK(evaluate(*c, {{0, 1}, {1, 1}, {2, 1}, {3, 1}}, Point{1, 1, 3}) == 3);
}

TEST_CASE("induced conical subdivisions") {
  const auto c = cone_of_square();
  HomogeneousLifting bent{{{0, -1}, {1, 1}, {2, -1}, {3, 1}}, {}};
  const auto s = induced_conical_subdivision(c, bent);
  CHECK(maximal_cones(s.refined) == std::set<VertexSet>{{0, 1, 3}, {1, 2, 3}});
  CHECK(is_simplicial(s.refined));

  HomogeneousLifting flat{{{0, 0}, {1, 0}, {2, 0}, {3, 0}}, {}};
  CHECK(induced_conical_subdivision(c, flat).refined.maximal_cones().size() == 1);
  flat.extra_rays[7] = {1, 1, 2};
  flat.values[7] = 1;
  CHECK(induced_conical_subdivision(c, flat).refined.maximal_cones().size() == 4);
  CHECK(is_homogeneous_lifting(*c, flat));
  flat.values[7] = -1;
  CHECK_FALSE(is_homogeneous_lifting(*c, flat));
  CHECK_ERROR(induced_conical_subdivision(c, flat), ErrorCode::NotConvexDown);
  flat.extra_rays[7] = {3, 0, 1};
  CHECK_ERROR(induced_conical_subdivision(c, flat), ErrorCode::DomainMismatch);
}

TEST_CASE("conical subdivision validation") {
  const auto c = cone_of_square();
  const std::map<VertexId, Point> gens = c->generators();
  const std::vector<VertexSet> halves = {{0, 1, 2}, {0, 2, 3}};
  const auto tri = ConicalComplex::build(3, gens, halves, c->integral());
  CHECK(is_conical_subdivision(tri, c).refined.maximal_cones().size() == 2);
  const std::vector<VertexSet> half = {{0, 1, 2}};
  std::map<VertexId, Point> three = gens;
  three.erase(3);
  CHECK_ERROR(is_conical_subdivision(ConicalComplex::build(3, three, half, c->integral()), c), ErrorCode::NotComplete);

  std::map<VertexId, Point> scaled = gens;
  for (auto& [id, g] : scaled) g = Rational(id + 2) * g;
  CHECK(same_cones(ConicalComplex::build(3, scaled, halves, c->integral()), tri));
}

TEST_CASE("conical extension keeps the rays") {
  for (const auto& cc : fx::conical_cases()) {
    CAPTURE(cc.name);
    const auto sub_tri = induced_conical_subdivision(cc.sub, cc.f0);
    const auto e = extend_conical_triangulation(cc.complex, cc.h, *cc.sub, sub_tri, cc.f0);
    CHECK(is_simplicial(e.triangulation.refined));
    CHECK(ray_directions(e.triangulation.refined) == ray_directions(*cc.complex));
    CHECK_NOTHROW(is_conical_subdivision(e.triangulation.refined, cc.complex));
    const auto again = induced_conical_subdivision(cc.complex, e.lifting);
    CHECK(same_cones(again.refined, e.triangulation.refined));
  }
  const auto cc = fx::conical_cases().front();
  const auto sub_tri = induced_conical_subdivision(cc.sub, cc.f0);
  const auto other = cone_of_square();
  CHECK_ERROR(extend_conical_triangulation(cc.complex, cc.h, *other, sub_tri, cc.f0), ErrorCode::NotSubcomplex);
}

TEST_CASE("per-cone lattices") {
  const auto c = fx::remark_morphism().source;
  const Matrix l = c->lattice_of({0, 1, 2, 3});
  CHECK(lattice::contains(l, Point{Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)}));
  const Matrix face = c->lattice_of({0, 1});
  CHECK(face.cols() == 2);
  CHECK_FALSE(lattice::contains(face, Point{Rational(1, 2), Rational(1, 2), 0, 0}));
}
