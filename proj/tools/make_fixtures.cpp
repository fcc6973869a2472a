// Regenerates the JSON fixture corpus from the programmatic fixtures.

#include <filesystem>
#include <iostream>

#include "polytri/fixtures.hpp"
#include "polytri/io.hpp"

using namespace polytri;
namespace fs = std::filesystem;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures DIR\n";
    return 2;
  }
  const fs::path dir = argv[1];
  fs::create_directories(dir);
  auto put = [&](const std::string& name, const std::string& kind, const io::Json& payload) {
    io::write_file(dir / (name + ".json"), {kind, io::kVersion, payload});
    std::cout << (dir / (name + ".json")).string() << "\n";
  };

  for (const auto& [name, c] : fixtures::complexes()) put(name, "complex", io::to_json(*c));
  put("square_edges", "complex", io::to_json(fixtures::square_edges()));
  put("prism_boundary", "complex", io::to_json(boundary(*fixtures::prism())));
  {
    std::vector<Point> pts;
    for (std::size_t i = 0; i < 5; ++i) {
      Point p(4);
      if (i > 0) p[i - 1] = 1;
      pts.push_back(p);
    }
    const VertexSet all[] = {{0, 1, 2, 3, 4}};
    put("simplex4", "complex", io::to_json(build_complex(pts, all, IntegralStructure::standard(4))));
  }

  put("square_lifting_zero", "lifting", io::to_json(VerticialLifting{{0, 0}, {1, 0}, {2, 0}, {3, 0}}));
  put("square_lifting_remark", "lifting", io::to_json(VerticialLifting{{0, -1}, {1, 1}, {2, -1}, {3, 1}}));
  put("prism_lifting_staircase", "lifting", io::to_json(fixtures::staircase_lifting()));
  put("prism_lifting_zero", "lifting", io::to_json(VerticialLifting{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}}));
  put("prism_twisted_boundary", "subdivision", io::to_json(fixtures::twisted_boundary()));

  for (const auto& name : {"square", "prism"}) {
    for (const auto& [n, c] : fixtures::complexes()) {
      if (n != name) continue;
      const auto [cone, h] = cone_over(*c);
      put(std::string("cone_over_") + name, "conical", io::to_json(cone, &h));
    }
  }
  put("orthant3", "conical", io::to_json(*fixtures::orthant(3)));
  put("remark_morphism", "morphism", io::to_json(fixtures::remark_morphism()));
  put("doubling_morphism", "morphism", io::to_json(fixtures::doubling_morphism()));
  put("identity_morphism2", "morphism", io::to_json(fixtures::identity_morphism(2)));
  return 0;
}
