#include <random>

#include "oracles.hpp"
#include "polytri/fixtures.hpp"
#include "polytri/lifting.hpp"
#include "polytri/triangulation.hpp"
#include "support.hpp"

using namespace polytri;
namespace fx = polytri::fixtures;

namespace {

const IntegralStructure Z2 = IntegralStructure::standard(2);

}  // namespace

TEST_CASE("build_complex rejects malformed input") {
  const std::vector<Point> tri = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  const std::vector<VertexSet> ok = {{0, 1, 2}, {1, 2, 3}};
  CHECK(build_complex(tri, ok, Z2).maximal_cells().size() == 2);

  const std::vector<Point> bad_dim = {{0, 0}, {1, 0}, {0, 1, 0}};
  const std::vector<VertexSet> one = {{0, 1, 2}};
  CHECK_ERROR(build_complex(bad_dim, one, Z2), ErrorCode::DimensionMismatch);

  const std::vector<Point> repeated = {{0, 0}, {1, 0}, {0, 0}};
  CHECK_ERROR(build_complex(repeated, one, Z2), ErrorCode::DegenerateInput);

  const std::vector<VertexSet> unknown = {{0, 1, 7}};
  CHECK_ERROR(build_complex(tri, unknown, Z2), ErrorCode::DomainMismatch);

  const std::vector<VertexSet> overlapping = {{0, 1, 2}, {0, 1, 3}};
  CHECK_ERROR(build_complex(tri, overlapping, Z2), ErrorCode::NotIntersectionClosed);

  const std::vector<Point> with_midpoint = {{0, 0}, {2, 0}, {0, 2}, {1, 0}};
  const std::vector<VertexSet> redundant = {{0, 1, 2, 3}};
  CHECK_ERROR(build_complex(with_midpoint, redundant, Z2), ErrorCode::RedundantVertex);
}

TEST_CASE("faces, boundary and skeleta") {
  const auto sq = fx::square();
  CHECK(sq->cells().size() == 4 + 4 + 1);
  CHECK(sq->dimension() == 2);
  const PolyComplex b = boundary(*sq);
  CHECK(b.maximal_cells().size() == 4);
  CHECK(is_subcomplex(b, *sq));
  CHECK(skeleton(*fx::cube(), 1).maximal_cells().size() == 12);
  CHECK(boundary(*fx::prism()).maximal_cells().size() == 5);
  CHECK(boundary(*fx::domino()).maximal_cells().size() == 6);
  const std::vector<VertexSet> diagonal = {{0, 2}};
  CHECK_ERROR(subcomplex(*sq, diagonal), ErrorCode::NotSubcomplex);
}

TEST_CASE("subdivision validation") {
  const auto sq = fx::square();
  const std::vector<Point> pts = {{0, 0}, {0, 1}, {1, 1}, {1, 0}};
  const std::vector<VertexSet> halves = {{0, 1, 2}, {0, 2, 3}};
  const auto s = is_subdivision(build_complex(pts, halves, Z2), sq);
  CHECK(s.refined.maximal_cells().size() == 2);

  const std::vector<Point> three(pts.begin(), pts.begin() + 3);
  const std::vector<VertexSet> half = {{0, 1, 2}};
  CHECK_ERROR(is_subdivision(build_complex(three, half, Z2), sq), ErrorCode::NotComplete);

  const std::vector<Point> outside = {{0, 0}, {0, 1}, {2, 1}};
  const std::vector<VertexSet> big = {{0, 1, 2}};
  CHECK_ERROR(is_subdivision(build_complex(outside, big, Z2), sq), ErrorCode::CellNotContained);
}

TEST_CASE("induced subdivisions of the square and the prism") {
  const auto sq = fx::square();
  const VerticialLifting zero{{0, 0}, {1, 0}, {2, 0}, {3, 0}};
  CHECK(same_cells(induced_subdivision(sq, zero).refined, *sq));
  const VerticialLifting bent{{0, -1}, {1, 1}, {2, -1}, {3, 1}};
  const auto s = induced_subdivision(sq, bent);
  CHECK(oracle::maximal_cells(s.refined) == std::set<VertexSet>{{0, 1, 3}, {1, 2, 3}});

  const auto t = induced_subdivision(fx::prism(), fx::staircase_lifting());
  CHECK(is_simplicial(t));
  CHECK(t.refined.maximal_cells().size() == 3);

  const VerticialLifting missing{{0, 0}, {1, 0}, {2, 0}};
  CHECK_ERROR(induced_subdivision(sq, missing), ErrorCode::DomainMismatch);
}

TEST_CASE("minimal extension with an interior point") {
  const auto sq = fx::square();
  std::map<VertexId, Point> pts = sq->vertices();
  pts[10] = {Rational(1, 2), Rational(1, 2)};
  VerticialLifting values{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {10, 1}};
  const PLLifting tent = minimal_extension(sq, pts, values);
  CHECK(tent.linearity.refined.maximal_cells().size() == 4);
  CHECK(evaluate(tent, {Rational(1, 2), Rational(1, 2)}) == 1);
  CHECK(evaluate(tent, {Rational(1, 4), Rational(1, 2)}) == Rational(1, 2));
  CHECK(evaluate(tent, {0, 1}) == 0);
  CHECK_ERROR(evaluate(tent, Point{2, 2}), ErrorCode::CellNotContained);

  values[10] = 0;
  CHECK(minimal_extension(sq, pts, values).linearity.refined.maximal_cells().size() == 1);
  values[10] = -1;
  CHECK_ERROR(minimal_extension(sq, pts, values), ErrorCode::UnattainableValue);
  pts[10] = {3, 3};
  values[10] = 0;
  CHECK_ERROR(minimal_extension(sq, pts, values), ErrorCode::DomainMismatch);
}

TEST_CASE("restriction of a lifting to a subcomplex") {
  const auto sq = fx::square();
  const PLLifting f = as_pl(sq, {{0, 0}, {1, 1}, {2, 2}, {3, 1}});
  const PolyComplex b = boundary(*sq);
  const PLLifting r = restrict(f, b);
  CHECK(r.values.size() == 4);
  CHECK(r.linearity.refined.maximal_cells().size() == 4);
  CHECK_ERROR(restrict(f, *fx::triangle()), ErrorCode::NotSubcomplex);
}

TEST_CASE("refine_by with a constant refinement changes nothing") {
  std::mt19937_64 rng(31);
  for (const auto& [name, c] : fx::complexes()) {
    const auto f = random_lifting(*c, rng, 3);
    const auto coarse = induced_subdivision(c, f);
    VerticialLifting constant;
    for (const auto& [id, p] : coarse.refined.vertices()) constant[id] = 5;
    CHECK(same_cells(refine_by(coarse, constant).refined, coarse.refined));
  }
}

TEST_CASE("explicit epsilon is positive and works below its value") {
  std::mt19937_64 rng(32);
  const auto c = fx::polygon(7);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = random_lifting(*c, rng, 2);
    const auto fp = random_lifting(*c, rng, 50);
    const Rational eps = explicit_epsilon(c, f, fp);
    CHECK(sgn(eps) > 0);
    const auto fine = refine_by(induced_subdivision(c, f), fp);
    for (const Rational& e : {Rational(eps), Rational(eps / 3), Rational(eps / 1000)}) {
      VerticialLifting g;
      for (const auto& [id, v] : f) g[id] = v + e * fp.at(id);
      CHECK(oracle::maximal_cells(fine.refined) == oracle::induced_cells(*c, g));
    }
  }
}

TEST_CASE("induced subdivisions are subdivisions") {
  std::mt19937_64 rng(33);
  for (const auto& [name, c] : fx::complexes()) {
    const auto s = induced_subdivision(c, random_lifting(*c, rng, 2));
    CHECK_NOTHROW(is_subdivision(s.refined, c));
    CHECK(s.refined.vertex_points().size() <= c->vertices().size());
  }
}

TEST_CASE("subdivision of a PL lifting that folds upward is rejected") {
  const auto sq = fx::square();
  std::map<VertexId, Point> pts = sq->vertices();
  const std::vector<VertexSet> halves = {{0, 1, 2}, {0, 2, 3}};
  PLLifting f{make_subdivision(sq, pts, halves), {{0, 0}, {1, 1}, {2, 0}, {3, 1}}};
  CHECK_ERROR(induced_subdivision(f), ErrorCode::NotConvexDown);
  f.values = {{0, 1}, {1, 0}, {2, 1}, {3, 0}};
  CHECK(induced_subdivision(f).refined.maximal_cells().size() == 2);
}
