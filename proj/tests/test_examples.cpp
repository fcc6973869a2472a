// Small worked examples with hand-checkable answers.

#include <random>

#include "oracles.hpp"
#include "polytri/fixtures.hpp"
#include "polytri/lattice.hpp"
#include "polytri/semistable.hpp"
#include "support.hpp"

using namespace polytri;
namespace fx = polytri::fixtures;

namespace {

std::set<VertexSet> cells_of_dim(const PolyComplex& c, int dim) {
  std::set<VertexSet> out;
  for (const auto& cell : c.cells()) {
    if (cell.dim == dim) out.insert(cell.vertices);
  }
  return out;
}

std::set<VertexSet> maximal_cones(const ConicalComplex& c) {
  std::set<VertexSet> out;
  for (auto m : c.maximal_cones()) out.insert(c.cone(m).rays);
  return out;
}

}  // namespace

TEST_CASE("prism skeleta and boundary") {
  const auto prism = fx::prism();
  const PolyComplex sk0 = skeleton(*prism, 0);
  CHECK(sk0.cells().size() == 6);
  CHECK(sk0.dimension() == 0);
  const PolyComplex sk2 = skeleton(*prism, 2);
  const PolyComplex b = boundary(*prism);
  CHECK(sk2.cells() == b.cells());
  CHECK(cells_of_dim(b, 2).size() == 5);
  std::size_t triangles = 0, squares = 0;
  for (const auto& c : cells_of_dim(b, 2)) (c.size() == 3 ? triangles : squares)++;
  CHECK(triangles == 2);
  CHECK(squares == 3);
  CHECK(is_simplicial(fx::twisted_boundary()));
  CHECK(cells_of_dim(fx::twisted_boundary().refined, 1).size() == 9 + 3);
}

TEST_CASE("tent over the square restricts to a tent on an edge") {
  const auto sq = fx::square();
  std::map<VertexId, Point> pts = sq->vertices();
  pts[8] = {0, Rational(1, 2)};  // midpoint of ab
  const PLLifting f = minimal_extension(sq, pts, {{0, 0}, {1, 0}, {2, 0}, {3, 0}, {8, 1}});
  CHECK(f.linearity.refined.maximal_cells().size() == 3);
  const std::vector<VertexSet> ab = {{0, 1}};
  const PLLifting edge = restrict(f, subcomplex(*sq, ab));
  CHECK(edge.linearity.refined.maximal_cells().size() == 2);
  CHECK(evaluate(edge, {0, Rational(1, 4)}) == Rational(1, 2));
  CHECK(evaluate(edge, {0, Rational(3, 4)}) == Rational(1, 2));
  CHECK(evaluate(f, {1, Rational(1, 2)}) == 0);
}

TEST_CASE("refining the trivial square subdivision") {
  const auto sq = fx::square();
  const VerticialLifting bent{{0, -1}, {1, 1}, {2, -1}, {3, 1}};
  const auto r = refine_by(trivial_subdivision(sq), bent);
  CHECK(same_cells(r.refined, induced_subdivision(sq, bent).refined));
  const VerticialLifting zero{{0, 0}, {1, 0}, {2, 0}, {3, 0}};
  const Rational eps = explicit_epsilon(sq, zero, bent);
  CHECK(sgn(eps) > 0);
  for (const Rational& e : {eps, Rational(eps / 2)}) {
    VerticialLifting g;
    for (const auto& [id, v] : bent) g[id] = e * v;
    CHECK(oracle::induced_cells(*sq, g) == oracle::maximal_cells(r.refined));
  }
}

TEST_CASE("fixed epsilon of one millionth on the prism fixtures") {
  const Rational eps(1, 1000000);
  std::mt19937_64 rng(61);
  for (const auto& c : {fx::prism(), fx::glued_prisms(), fx::hexagonal_prism()}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto f = random_lifting(*c, rng, 4);
      const auto fp = random_lifting(*c, rng, 4);
      REQUIRE(eps <= explicit_epsilon(c, f, fp));
      VerticialLifting g;
      for (const auto& [id, v] : f) g[id] = v + eps * fp.at(id);
      CHECK(same_cells(induced_subdivision(c, g).refined, refine_by(induced_subdivision(c, f), fp).refined));
    }
  }
}

TEST_CASE("epsilon for an extension by zero on the prism") {
  const auto prism = fx::prism();
  const auto b = std::make_shared<const PolyComplex>(boundary(*prism));
  const auto f0 = restrict(fx::staircase_lifting(), *b);
  const auto e = extend_triangulation(prism, *b, induced_subdivision(b, f0), f0, RandomStrategy{9, 100});
  const Rational eps = explicit_epsilon(e.extension_by_zero, e.generic);
  CHECK(eps == e.epsilon);
  CHECK(same_cells(induced_subdivision(combine(e.extension_by_zero, e.generic, eps)).refined,
                   e.triangulation.refined));
}

TEST_CASE("random generic lifting of the prism") {
  const auto prism = fx::prism();
  const auto all = enumerate_triangulations(prism);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto t = induced_subdivision(prism, generic_simplicial_lifting(prism, RandomStrategy{seed, 1000}));
    CHECK(t.refined.maximal_cells().size() == 3);
    CHECK(std::any_of(all.begin(), all.end(), [&](const Subdivision& s) { return same_cells(s.refined, t.refined); }));
    CHECK(std::holds_alternative<RegularityCertificate>(is_regular(t)));
  }
}

TEST_CASE("certificate for the bd diagonal") {
  const auto sq = fx::square();
  const auto s = induced_subdivision(sq, {{0, -1}, {1, 1}, {2, -1}, {3, 1}});
  const auto r = is_regular(s);
  const auto& cert = std::get<RegularityCertificate>(r);
  CHECK(verify_certificate(s, cert));
  CHECK(same_cells(induced_subdivision(sq, cert.lifting).refined, s.refined));
}

TEST_CASE("stability of the bd diagonal") {
  const auto sq = fx::square();
  const VerticialLifting c{{0, -1}, {1, 1}, {2, -1}, {3, 1}};
  const Rational r = stability_radius(sq, c);
  CHECK(sgn(r) > 0);
  const auto base = oracle::maximal_cells(induced_subdivision(sq, c).refined);
  std::mt19937_64 rng(62);
  std::uniform_int_distribution<long> num(-1000, 1000);
  for (int s = 0; s < 100; ++s) {
    VerticialLifting g = c;
    // |delta_i| <= r/4 in each of four coordinates keeps the norm at most r/2.
    for (auto& [id, v] : g) v += r * num(rng) / 4000;
    CHECK(oracle::induced_cells(*sq, g) == base);
  }
}

TEST_CASE("cone over the prism slices back to the prism") {
  const auto prism = fx::prism();
  const auto [cone, h] = cone_over(*prism);
  const PolyComplex s = slice(cone, h);
  std::set<VertexSet> a, b;
  for (const auto& c : s.cells()) a.insert(c.vertices);
  for (const auto& c : prism->cells()) b.insert(c.vertices);
  CHECK(a == b);
  for (const auto& [id, p] : prism->vertices()) {
    Point lifted = p;
    lifted.push_back(1);
    CHECK(s.point(id) == lifted);
  }
}

TEST_CASE("orthant slices to a simplex") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto o = fx::orthant(n);
    SlicingFunction h;
    for (const auto& [id, ray] : o->rays()) h.ray_values[id] = 1;
    const PolyComplex s = slice(*o, h);
    REQUIRE(s.maximal_cells().size() == 1);
    CHECK(s.cell(s.maximal_cells()[0]).dim == static_cast<int>(n) - 1);
    CHECK(s.cell(s.maximal_cells()[0]).simplicial());
    for (const auto& [id, ray] : o->rays()) h.ray_values[id] = 2;
    const PolyComplex halved = slice(*o, h);
    for (const auto& [id, p] : s.vertices()) CHECK(halved.point(id) == Rational(1, 2) * p);
  }
}

TEST_CASE("interior ray above the chord") {
  const std::map<VertexId, Point> rays = {{0, {1, 0}}, {1, {0, 1}}};
  const std::vector<VertexSet> cone = {{0, 1}};
  const auto c = std::make_shared<const ConicalComplex>(
      ConicalComplex::build(2, rays, cone, IntegralStructure::standard(2)));
  HomogeneousLifting f{{{0, 0}, {1, 0}, {2, 1}}, {{2, {1, 1}}}};
  CHECK(is_homogeneous_lifting(*c, f));
  const auto s = induced_conical_subdivision(c, f);
  CHECK(maximal_cones(s.refined) == std::set<VertexSet>{{0, 2}, {1, 2}});
}

TEST_CASE("conical extension from one face of the cone over the square") {
  const auto [cone, h] = cone_over(*fx::square());
  const auto c = std::make_shared<const ConicalComplex>(cone);
  const std::vector<VertexSet> face = {{0, 1}};
  const auto sub = std::make_shared<const ConicalComplex>(conical_subcomplex(*c, face));
  const HomogeneousLifting f0{{{0, 0}, {1, 0}}, {}};
  const auto e = extend_conical_triangulation(c, h, *sub, trivial_conical_subdivision(sub), f0);
  CHECK(e.triangulation.refined.maximal_cones().size() == 2);
  CHECK(is_simplicial(e.triangulation.refined));
  CHECK(ray_directions(e.triangulation.refined) == ray_directions(*c));
}

TEST_CASE("base change of the doubling map") {
  const auto f = fx::doubling_morphism();
  const auto g = base_change(f, {2});
  const Matrix l = g.source->lattice_of({0});
  CHECK(lattice::contains(l, Point{1}));
  CHECK_FALSE(lattice::contains(l, Point{Rational(1, 2)}));
  const Point prim = lattice::primitive_vector(l, Point{1});
  CHECK(prim == Point{1});
  CHECK(image(g, prim) == Point{2});
  CHECK(lattice::primitive_vector(g.target.lattice(), image(g, prim)) == image(g, prim));
}

TEST_CASE("preimage pieces of the R^4 to R^2 morphism") {
  const auto sk = preimage_skeleton(fx::remark_morphism());
  CHECK(maximal_cones(sk.pieces[0]) == std::set<VertexSet>{{0, 1}});
  CHECK(maximal_cones(sk.pieces[1]) == std::set<VertexSet>{{2, 3}});
  const auto f = fx::remark_morphism();
  for (const auto& piece : sk.pieces) {
    for (auto m : piece.maximal_cones()) CHECK(cone_index(*f.source, piece.cone(m).rays) == 1);
  }
}
