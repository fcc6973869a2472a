#include <numeric>
#include <random>

#include "oracles.hpp"
#include "polytri/fixtures.hpp"
#include "polytri/lattice.hpp"
#include "polytri/semistable.hpp"
#include "support.hpp"

using namespace polytri;
namespace fx = polytri::fixtures;

namespace {

// Random unimodular integer matrix as a product of elementary moves.
Matrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  Matrix u = Matrix::identity(n);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<long> mult(-2, 2);
  for (int step = 0; step < 8; ++step) {
    const std::size_t i = pick(rng), j = pick(rng);
    if (i == j) continue;
    Matrix e = Matrix::identity(n);
    e(i, j) = mult(rng);
    u = e * u;
  }
  return u;
}

Integer gcd_of(const Point& p) {
  Integer g = 0;
  for (const auto& x : p) g = gcd(g, Integer(x.get_num()));
  return g;
}

// |det| of the primitive integer generators of a full-dimensional cone in Z^n.
Integer oracle_index(const std::vector<Point>& rays) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : rays) {
    const Integer g = gcd_of(r);
    std::vector<Rational> row;
    for (const auto& x : r) row.push_back(x / g);
    rows.push_back(row);
  }
  const Rational d = oracle::determinant(rows);
  return abs(d.get_num());
}

}  // namespace

TEST_CASE("cone index examples") {
  const std::vector<Point> two = {{1, 0}, {1, 2}};
  CHECK(cone_index(two, Matrix::identity(2)) == 2);
  const std::vector<Point> unit = {{1, 0}, {0, 1}};
  CHECK(cone_index(unit, Matrix::identity(2)) == 1);
  const std::vector<Point> scaled = {{3, 0}, {0, 5}};
  CHECK(cone_index(scaled, Matrix::identity(2)) == 1);
  const std::vector<Point> ray = {{2, 4, 0}};
  CHECK(cone_index(ray, Matrix::identity(3)) == 1);
  const std::vector<Point> face = {{1, 0, 0}, {1, 2, 0}};
  CHECK(cone_index(face, Matrix::identity(3)) == 2);
  const std::vector<Point> dependent = {{1, 0}, {2, 0}};
  CHECK_ERROR(cone_index(dependent, Matrix::identity(2)), ErrorCode::NotSimplicial);
}

TEST_CASE("cone index matches the determinant and is invariant") {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<long> coord(-4, 4);
  int tested = 0;
  while (tested < 80) {
    const std::size_t n = 2 + tested % 2;
    std::vector<Point> rays(n, Point(n));
    for (auto& r : rays) {
      for (auto& x : r) x = coord(rng);
    }
    if (oracle::determinant(std::vector<std::vector<Rational>>(rays.begin(), rays.end())) == 0) continue;
    const Integer index = cone_index(rays, Matrix::identity(n));
    CHECK(index == oracle_index(rays));
    // Same index after a unimodular change of coordinates applied to both.
    const Matrix u = random_unimodular(rng, n);
    std::vector<Point> moved;
    for (const auto& r : rays) moved.push_back(u * r);
    CHECK(cone_index(moved, u) == index);
    // And after permuting or rescaling the generators.
    std::vector<Point> shuffled = rays;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    shuffled[0] = Rational(3) * shuffled[0];
    CHECK(cone_index(shuffled, Matrix::identity(n)) == index);
    ++tested;
  }
}

TEST_CASE("the R^4 to R^2 morphism") {
  const auto f = fx::remark_morphism();
  CHECK(cone_index(*f.source, {0, 1, 2, 3}) == 2);
  CHECK(image(f, Point{1, 1, 1, 1}) == Point{2, 2});
  CHECK(image(f, Point{Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)}) == Point{1, 1});
  const auto report = check_nearly_semistable(f, trivial_conical_subdivision(f.source));
  CHECK(report.equidimensional);
  CHECK(report.reduced);
  CHECK(report.codim1_semistable);
  CHECK(report.simplicial);
  CHECK(report.nearly_semistable());
  CHECK_FALSE(report.semistable());
  REQUIRE(report.maximal_indices.size() == 1);
  CHECK(report.maximal_indices[0].second == 2);

  const auto sk = preimage_skeleton(f);
  CHECK(sk.skeleton.cones().size() == 6);
  REQUIRE(sk.pieces.size() == 2);
  CHECK(sk.pieces[0].cones().size() == 3);
  CHECK(sk.pieces[1].cones().size() == 3);
}

TEST_CASE("doubling map becomes semistable after base change") {
  const auto f = fx::doubling_morphism();
  const auto before = check_nearly_semistable(f, trivial_conical_subdivision(f.source));
  CHECK_FALSE(before.reduced);
  CHECK(before.verdict == Verdict::Neither);
  const auto g = base_change(f, {2});
  CHECK(g.target.multipliers == std::vector<Integer>{2});
  const auto after = check_nearly_semistable(g, trivial_conical_subdivision(g.source));
  CHECK(after.verdict == Verdict::Semistable);
  const auto r = weak_to_nearly_semistable(f, trivial_boundary_data(f, {2}));
  CHECK(r.report.semistable());
}

TEST_CASE("identity morphisms are semistable") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto f = fx::identity_morphism(n);
    CHECK(check_nearly_semistable(f, trivial_conical_subdivision(f.source)).semistable());
  }
  const auto g = base_change(fx::identity_morphism(2), {2, 3});
  CHECK(check_nearly_semistable(g, trivial_conical_subdivision(g.source)).semistable());
}

TEST_CASE("base change by ones is the identity and composes") {
  const auto f = fx::remark_morphism();
  const auto same = base_change(f, {1, 1});
  CHECK(*same.source == *f.source);
  CHECK(same.source->cone_lattices() == f.source->cone_lattices());
  CHECK(same.target.multipliers == f.target.multipliers);

  const auto id = fx::identity_morphism(2);
  const auto twice = base_change(base_change(id, {2, 1}), {3, 2});
  const auto once = base_change(id, {6, 2});
  CHECK(twice.target.multipliers == once.target.multipliers);
  const Matrix a = twice.source->lattice_of({0, 1}), b = once.source->lattice_of({0, 1});
  for (std::size_t c = 0; c < a.cols(); ++c) CHECK(lattice::contains(b, a.column(c)));
  for (std::size_t c = 0; c < b.cols(); ++c) CHECK(lattice::contains(a, b.column(c)));

  CHECK_ERROR(base_change(f, {1, 0}), ErrorCode::NonPositiveMultiplier);
  CHECK_ERROR(base_change(f, {1, -2}), ErrorCode::NonPositiveMultiplier);
  CHECK_ERROR(base_change(f, {2}), ErrorCode::DimensionMismatch);
}

TEST_CASE("morphism validation") {
  const auto o2 = fx::orthant(2);
  const auto std2 = OrthantBase::standard(2);
  CHECK_NOTHROW(make_morphism(o2, std2, {{0, {1, 0}}, {1, {0, 1}}}));
  CHECK_ERROR(make_morphism(o2, std2, {{0, {1, 0}}}), ErrorCode::InvalidMorphism);
  CHECK_ERROR(make_morphism(o2, std2, {{0, {-1, 0}}, {1, {0, 1}}}), ErrorCode::InvalidMorphism);
  CHECK_ERROR(make_morphism(o2, std2, {{0, {1, 0}}, {1, {1, 0}}}), ErrorCode::InvalidMorphism);
  CHECK_ERROR(make_morphism(o2, std2, {{0, {Rational(1, 2), 0}}, {1, {0, 1}}}), ErrorCode::InvalidMorphism);
  CHECK_ERROR(make_morphism(o2, std2, {{0, {1, 0, 0}}, {1, {0, 1}}}), ErrorCode::DimensionMismatch);
  CHECK_ERROR(image(fx::identity_morphism(2), Point{-1, 0}), ErrorCode::CellNotContained);
}

TEST_CASE("incompatible subdivisions are rejected") {
  const auto f = fx::identity_morphism(2);
  const auto other = std::make_shared<const ConicalComplex>(cone_over(*fx::square()).first);
  CHECK_ERROR(check_nearly_semistable(f, trivial_conical_subdivision(other)), ErrorCode::IncompatibleSubdivision);
}

TEST_CASE("reduction of the R^4 to R^2 morphism") {
  const auto f = fx::remark_morphism();
  const auto r = weak_to_nearly_semistable(f, trivial_boundary_data(f, {1, 1}));
  CHECK(r.report.nearly_semistable());
  CHECK(is_simplicial(r.subdivision.refined));
  CHECK(ray_directions(r.subdivision.refined) == ray_directions(*f.source));
  CHECK_ERROR(weak_to_nearly_semistable(f, trivial_boundary_data(f, {1, 0})), ErrorCode::NonPositiveMultiplier);
}

TEST_CASE("index-one search") {
  const auto c = std::make_shared<const ConicalComplex>(cone_over(*fx::square()).first);
  const auto piece = find_index_one_triangulation(c);
  CHECK(piece.triangulation.refined.maximal_cones().size() == 2);
  for (auto m : piece.triangulation.refined.maximal_cones()) {
    CHECK(cone_index(piece.triangulation.refined, piece.triangulation.refined.cone(m).rays) == 1);
  }
  const auto again = induced_conical_subdivision(c, piece.lifting);
  CHECK(same_cones(again.refined, piece.triangulation.refined));
  const auto big = std::make_shared<const ConicalComplex>(cone_over(*fx::cube()).first);
  CHECK_ERROR(find_index_one_triangulation(big), ErrorCode::UnsupportedDimension);
}
