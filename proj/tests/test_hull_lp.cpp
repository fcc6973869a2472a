#include <random>

#include "oracles.hpp"
#include "polytri/hull.hpp"
#include "polytri/lp.hpp"
#include "support.hpp"

using namespace polytri;

namespace {

std::vector<Point> cube_points() {
  std::vector<Point> pts;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int z = 0; z < 2; ++z) pts.push_back({x, y, z});
    }
  }
  return pts;
}

}  // namespace

TEST_CASE("cube hull with interior and boundary points") {
  auto pts = cube_points();
  pts.push_back({Rational(1, 2), Rational(1, 2), Rational(1, 2)});
  pts.push_back({Rational(1, 2), 0, 0});
  const Hull h = convex_hull(pts);
  CHECK(h.vertices.size() == 8);
  CHECK(h.facets.size() == 6);
  CHECK(h.dimension == 3);
}

TEST_CASE("hull facets support every input point") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> coord(-6, 6);
  for (int trial = 0; trial < 60; ++trial) {
    std::set<Point, PointLess> unique;
    while (unique.size() < 12) unique.insert({coord(rng), coord(rng), coord(rng)});
    const std::vector<Point> pts(unique.begin(), unique.end());
    const Hull h = full_dimensional_hull(pts);
    std::size_t edges = 0;
    for (const auto& f : h.facets) {
      for (const auto& p : pts) CHECK(dot(f.normal, p) <= f.offset);
      std::vector<Point> on;
      for (auto i : f.points) on.push_back(pts[i]);
      CHECK(oracle::affine_dim(on) == 2);
      std::vector<Point> verts;
      for (auto i : f.points) {
        if (std::binary_search(h.vertices.begin(), h.vertices.end(), i)) verts.push_back(pts[i]);
      }
      edges += verts.size();
    }
    // Euler: V - E + F = 2, with each edge counted by its two facets.
    const long v = static_cast<long>(h.vertices.size());
    const long f = static_cast<long>(h.facets.size());
    CHECK(v - static_cast<long>(edges) / 2 + f == 2);
  }
}

TEST_CASE("face lattice and pulling triangulation of a hexagon") {
  const std::vector<Point> hex = {{0, 0}, {2, 0}, {3, 1}, {2, 2}, {0, 2}, {-1, 1}};
  const auto faces = face_lattice(hex);
  CHECK(faces.size() == 6 + 6 + 1);
  const auto tri = pulling_triangulation(hex);
  CHECK(tri.size() == 4);
  const AffineFrame frame(hex);
  Rational total = 0;
  for (const auto& s : tri) {
    std::vector<Point> simplex;
    for (auto i : s) simplex.push_back(hex[i]);
    total += simplex_volume(simplex, frame);
  }
  CHECK(total == polytope_volume(hex, frame));
}

TEST_CASE("upper hull pieces match the brute-force cells") {
  std::mt19937_64 rng(22);
  const std::vector<Point> pts = {{0, 0}, {2, 0}, {4, 1}, {5, 3}, {4, 5}, {2, 6}};
  std::uniform_int_distribution<long> h(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Rational> heights;
    for (std::size_t i = 0; i < pts.size(); ++i) heights.push_back(h(rng));
    const UpperHull up = upper_hull(pts, heights);
    std::set<VertexSet> pieces(up.piece_vertices.begin(), up.piece_vertices.end());
    std::map<VertexId, Point> vertices;
    for (std::size_t i = 0; i < pts.size(); ++i) vertices[i] = pts[i];
    const std::vector<VertexSet> cell = {{0, 1, 2, 3, 4, 5}};
    const PolyComplex c = build_complex(vertices, cell, IntegralStructure::standard(2));
    VerticialLifting f;
    for (std::size_t i = 0; i < pts.size(); ++i) f[i] = heights[i];
    CHECK(pieces == oracle::induced_cells(c, f));
  }
}

TEST_CASE("simplex agrees with Fourier-Motzkin and certifies both answers") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> coef(-3, 3);
  std::size_t feasible = 0, infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    lp::System s;
    s.variables = 1 + trial % 3;
    const std::size_t rows = 2 + trial % 5;
    for (std::size_t r = 0; r < rows; ++r) {
      Point a(s.variables);
      for (auto& x : a) x = coef(rng);
      s.add(a, r == 0 && trial % 4 == 0 ? lp::Relation::Equal : lp::Relation::GreaterEqual, coef(rng));
    }
    const auto result = lp::solve(s);
    CHECK(result.feasible() == lp::feasible_fourier_motzkin(s));
    CHECK(result.solution.has_value() != result.farkas.has_value());
    if (result.solution) {
      CHECK(lp::satisfies(s, *result.solution));
      ++feasible;
    } else {
      REQUIRE(result.farkas);
      CHECK(lp::verify_farkas(s, *result.farkas));
      ++infeasible;
    }
  }
  CHECK(feasible > 0);
  CHECK(infeasible > 0);
}

TEST_CASE("a tampered Farkas vector is rejected") {
  lp::System s;
  s.variables = 1;
  s.add({1}, lp::Relation::GreaterEqual, 1);
  s.add({-1}, lp::Relation::GreaterEqual, 0);
  const auto r = lp::solve(s);
  REQUIRE(r.farkas);
  CHECK(lp::verify_farkas(s, *r.farkas));
  auto bad = *r.farkas;
  bad[0] += 1;
  CHECK_FALSE(lp::verify_farkas(s, bad));
  CHECK_FALSE(lp::verify_farkas(s, {-1, -1}));
}
