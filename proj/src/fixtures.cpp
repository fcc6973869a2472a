#include "polytri/fixtures.hpp"

#include <stdexcept>

#include "polytri/triangulation.hpp"

namespace polytri::fixtures {

namespace {

Point pt(std::initializer_list<int> xs) {
  Point p;
  for (int x : xs) p.push_back(x);
  return p;
}

ComplexPtr make(std::vector<Point> points, std::vector<VertexSet> cells) {
  const std::size_t n = points.front().size();
  return std::make_shared<const PolyComplex>(build_complex(points, cells, IntegralStructure::standard(n)));
}

ComplexPtr share(PolyComplex c) { return std::make_shared<const PolyComplex>(std::move(c)); }

ComplexPtr boundary_of(const ComplexPtr& c) { return share(boundary(*c)); }

VerticialLifting random_on(const PolyComplex& sub, std::uint64_t seed) {
  return generic_simplicial_lifting(std::make_shared<const PolyComplex>(sub), RandomStrategy{seed, 50});
}

std::vector<VertexSet> all_of(std::size_t n) {
  VertexSet v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(i);
  return {v};
}

}  // namespace

ComplexPtr square() { return make({pt({0, 0}), pt({0, 1}), pt({1, 1}), pt({1, 0})}, all_of(4)); }

PolyComplex square_edges() {
  const VertexSet edges[] = {{0, 1}, {2, 3}};
  return subcomplex(*square(), edges);
}

ComplexPtr segment() { return make({pt({0}), pt({1})}, all_of(2)); }

ComplexPtr triangle() { return make({pt({0, 0}), pt({1, 0}), pt({0, 1})}, all_of(3)); }

ComplexPtr tetrahedron() { return make({pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1})}, all_of(4)); }

ComplexPtr prism() {
  return make({pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1}), pt({1, 0, 1}), pt({0, 1, 1})}, all_of(6));
}

Subdivision twisted_boundary() {
  const auto p = prism();
  const auto b = boundary_of(p);
  const std::vector<VertexSet> cells = {{0, 1, 2}, {3, 4, 5}, {0, 1, 4}, {0, 3, 4},
                                        {1, 2, 5}, {1, 4, 5}, {0, 2, 3}, {2, 3, 5}};
  return is_subdivision(build_complex(p->vertices(), cells, p->integral()), b);
}

VerticialLifting staircase_lifting() { return {{0, 2}, {1, 1}, {2, 0}, {3, 0}, {4, 1}, {5, 2}}; }

ComplexPtr cube() {
  std::vector<Point> pts;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int z = 0; z < 2; ++z) pts.push_back(pt({x, y, z}));
    }
  }
  return make(pts, all_of(8));
}

ComplexPtr glued_prisms() {
  return make({pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1}), pt({1, 0, 1}), pt({0, 1, 1}), pt({0, 0, 2}),
               pt({1, 0, 2}), pt({0, 1, 2})},
              {{0, 1, 2, 3, 4, 5}, {3, 4, 5, 6, 7, 8}});
}

ComplexPtr polygon(std::size_t vertices) {
  static const std::vector<Point> ring = {pt({0, 0}), pt({2, 0}), pt({4, 1}), pt({5, 3}),
                                          pt({4, 5}), pt({2, 6}), pt({0, 5}), pt({-1, 2})};
  if (vertices < 3 || vertices > ring.size()) throw std::invalid_argument("polygon size out of range");
  // Every prefix of the ring is in convex position.
  return make(std::vector<Point>(ring.begin(), ring.begin() + static_cast<std::ptrdiff_t>(vertices)), all_of(vertices));
}

ComplexPtr domino() {
  return make({pt({0, 0}), pt({1, 0}), pt({2, 0}), pt({0, 1}), pt({1, 1}), pt({2, 1})}, {{0, 1, 3, 4}, {1, 2, 4, 5}});
}

ComplexPtr l_shape() {
  return make({pt({0, 0}), pt({1, 0}), pt({2, 0}), pt({0, 1}), pt({1, 1}), pt({2, 1}), pt({0, 2}), pt({1, 2})},
              {{0, 1, 3, 4}, {1, 2, 4, 5}, {3, 4, 6, 7}});
}

ComplexPtr strip() {
  return make({pt({0, 0}), pt({1, 0}), pt({2, 0}), pt({3, 0}), pt({0, 1}), pt({1, 1}), pt({2, 1}), pt({3, 1})},
              {{0, 1, 4, 5}, {1, 2, 5, 6}, {2, 3, 6, 7}});
}

ComplexPtr square_pyramid() {
  return make({pt({0, 0, 0}), pt({2, 0, 0}), pt({2, 2, 0}), pt({0, 2, 0}), pt({1, 1, 1})}, all_of(5));
}

ComplexPtr octahedron() {
  return make({pt({1, 0, 0}), pt({-1, 0, 0}), pt({0, 1, 0}), pt({0, -1, 0}), pt({0, 0, 1}), pt({0, 0, -1})}, all_of(6));
}

ComplexPtr bipyramid() {
  return make({pt({0, 0, 0}), pt({2, 0, 0}), pt({0, 2, 0}), pt({1, 1, 2}), pt({0, 0, -1})}, {{0, 1, 2, 3}, {0, 1, 2, 4}});
}

ComplexPtr split_hexagon() {
  return make({pt({0, 0}), pt({2, 0}), pt({3, 1}), pt({2, 2}), pt({0, 2}), pt({-1, 1})}, {{0, 1, 3, 4}, {1, 2, 3}, {0, 4, 5}});
}

ComplexPtr hexagonal_prism() {
  const std::vector<Point> ring = {pt({0, 0}), pt({2, 0}), pt({3, 1}), pt({2, 2}), pt({0, 2}), pt({-1, 1})};
  std::vector<Point> pts;
  for (int z = 0; z < 2; ++z) {
    for (const auto& p : ring) pts.push_back(Point{p[0], p[1], Rational(z)});
  }
  return make(pts, all_of(12));
}

std::vector<Named> complexes() {
  return {{"segment", segment()},
          {"triangle", triangle()},
          {"square", square()},
          {"pentagon", polygon(5)},
          {"hexagon", polygon(6)},
          {"octagon", polygon(8)},
          {"domino", domino()},
          {"l_shape", l_shape()},
          {"strip", strip()},
          {"split_hexagon", split_hexagon()},
          {"tetrahedron", tetrahedron()},
          {"prism", prism()},
          {"square_pyramid", square_pyramid()},
          {"octahedron", octahedron()},
          {"bipyramid", bipyramid()},
          {"cube", cube()},
          {"glued_prisms", glued_prisms()},
          {"hexagonal_prism", hexagonal_prism()}};
}

std::vector<ExtensionCase> extension_cases() {
  std::vector<ExtensionCase> out;
  auto add_boundary = [&](const std::string& name, const ComplexPtr& c, std::uint64_t seed) {
    auto b = boundary_of(c);
    out.push_back({name, c, b, random_on(*b, seed)});
  };
  auto sq = square();
  out.push_back({"square_trivial_boundary", sq, boundary_of(sq), {{0, 0}, {1, 0}, {2, 0}, {3, 0}}});
  out.push_back({"square_edges", sq, share(square_edges()), {{0, 0}, {1, 0}, {2, 0}, {3, 0}}});
  add_boundary("triangle", triangle(), 1);
  add_boundary("pentagon", polygon(5), 2);
  add_boundary("hexagon", polygon(6), 3);
  add_boundary("octagon", polygon(8), 4);
  add_boundary("domino", domino(), 5);
  add_boundary("l_shape", l_shape(), 6);
  add_boundary("strip", strip(), 7);
  add_boundary("split_hexagon", split_hexagon(), 8);
  add_boundary("tetrahedron", tetrahedron(), 9);
  auto pr = prism();
  out.push_back({"prism_staircase", pr, boundary_of(pr), staircase_lifting()});
  add_boundary("prism_random", pr, 10);
  add_boundary("square_pyramid", square_pyramid(), 11);
  add_boundary("octahedron", octahedron(), 12);
  add_boundary("bipyramid", bipyramid(), 13);
  add_boundary("cube", cube(), 14);
  add_boundary("glued_prisms", glued_prisms(), 15);
  add_boundary("hexagonal_prism", hexagonal_prism(), 16);
  {
    auto c = cube();
    const VertexSet facet[] = {{0, 1, 2, 3}};
    auto f = share(subcomplex(*c, facet));
    out.push_back({"cube_one_facet", c, f, random_on(*f, 17)});
    auto e = share(skeleton(*c, 1));
    out.push_back({"cube_edges", c, e, random_on(*e, 18)});
  }
  {
    const VertexSet caps[] = {{0, 1, 2}, {3, 4, 5}};
    auto s = share(subcomplex(*pr, caps));
    out.push_back({"prism_caps", pr, s, random_on(*s, 19)});
  }
  {
    auto seg = segment();
    auto b = boundary_of(seg);
    out.push_back({"segment", seg, b, {{0, 3}, {1, -2}}});
  }
  // Cones over polygons sliced back at a tilted height.
  for (std::size_t k : {4u, 5u, 7u}) {
    auto [cone, h] = cone_over(*polygon(k));
    for (auto& [id, v] : h.ray_values) v = Rational(1) + cone.ray(id).generator[0] / 8;
    auto sliced = share(slice(cone, h));
    auto b = boundary_of(sliced);
    out.push_back({"sliced_cone_over_polygon_" + std::to_string(k), sliced, b, random_on(*b, 20 + k)});
  }
  return out;
}

std::vector<ConicalCase> conical_cases() {
  std::vector<ConicalCase> out;
  const std::vector<std::string> names = {"triangle",     "square",         "pentagon",   "hexagon",
                                          "domino",       "l_shape",        "split_hexagon", "tetrahedron",
                                          "prism",        "square_pyramid", "cube",       "glued_prisms"};
  std::map<std::string, ComplexPtr> by_name;
  for (auto& n : complexes()) by_name[n.name] = n.complex;
  std::uint64_t seed = 100;
  for (const auto& name : names) {
    const auto& c = by_name.at(name);
    auto [cone, h] = cone_over(*c);
    auto complex = std::make_shared<const ConicalComplex>(std::move(cone));
    const auto b = boundary(*c);
    std::vector<VertexSet> cells;
    for (auto m : b.maximal_cells()) cells.push_back(b.cell(m).vertices);
    auto sub = std::make_shared<const ConicalComplex>(conical_subcomplex(*complex, cells));
    HomogeneousLifting f0;
    for (const auto& [id, v] : random_on(b, seed++)) f0.values[id] = v;
    out.push_back({"cone_over_" + name, complex, h, sub, f0});
  }
  {
    // Prism cone with the staircase boundary data.
    auto [cone, h] = cone_over(*prism());
    auto complex = std::make_shared<const ConicalComplex>(std::move(cone));
    const auto b = boundary(*prism());
    std::vector<VertexSet> cells;
    for (auto m : b.maximal_cells()) cells.push_back(b.cell(m).vertices);
    auto sub = std::make_shared<const ConicalComplex>(conical_subcomplex(*complex, cells));
    HomogeneousLifting f0;
    for (const auto& [id, v] : staircase_lifting()) f0.values[id] = v;
    out.push_back({"cone_over_prism_staircase", complex, h, sub, f0});
  }
  return out;
}

std::shared_ptr<const ConicalComplex> orthant(std::size_t n, const Matrix& lattice) {
  std::map<VertexId, Point> gens;
  VertexSet all;
  for (std::size_t i = 0; i < n; ++i) {
    Point e(n);
    e[i] = 1;
    gens[i] = e;
    all.push_back(i);
  }
  const VertexSet tops[] = {all};
  IntegralStructure integral = lattice.rows() ? IntegralStructure{lattice} : IntegralStructure::standard(n);
  return std::make_shared<const ConicalComplex>(ConicalComplex::build(n, gens, tops, integral));
}

ConicalMorphism identity_morphism(std::size_t n) {
  auto src = orthant(n);
  std::map<VertexId, Point> images;
  for (const auto& [id, r] : src->rays()) images[id] = r.generator;
  return make_morphism(src, OrthantBase::standard(n), images);
}

ConicalMorphism remark_morphism() {
  const Rational half(1, 2);
  Matrix basis(4, 4);
  for (std::size_t r = 0; r < 4; ++r) basis(r, 0) = half;
  for (std::size_t c = 1; c < 4; ++c) basis(c, c) = 1;
  auto src = orthant(4, basis);
  return make_morphism(src, OrthantBase::standard(2),
                       {{0, pt({1, 0})}, {1, pt({1, 0})}, {2, pt({0, 1})}, {3, pt({0, 1})}});
}

ConicalMorphism doubling_morphism() { return make_morphism(orthant(1), OrthantBase::standard(1), {{0, pt({2})}}); }

}  // namespace polytri::fixtures
