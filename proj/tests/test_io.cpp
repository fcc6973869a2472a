#include <filesystem>
#include <fstream>
#include <sstream>

#include "polytri/export.hpp"
#include "polytri/fixtures.hpp"
#include "polytri/io.hpp"
#include "support.hpp"

using namespace polytri;
namespace fx = polytri::fixtures;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("every fixture file round-trips byte for byte") {
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(POLYTRI_FIXTURE_DIR)) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().string());
    const std::string text = slurp(entry.path());
    const io::Document doc = io::parse(text);
    CHECK(doc.version == io::kVersion);
    CHECK(io::dump(doc) == text);
    if (doc.kind == "complex") {
      CHECK(io::to_json(io::complex_from_json(doc.payload)) == doc.payload);
    } else if (doc.kind == "conical") {
      CHECK(io::to_json(io::conical_from_json(doc.payload)).at("rays") == doc.payload.at("rays"));
    } else if (doc.kind == "morphism") {
      CHECK(io::to_json(io::morphism_from_json(doc.payload)) == doc.payload);
    } else if (doc.kind == "subdivision") {
      CHECK(io::to_json(io::subdivision_from_json(doc.payload)) == doc.payload);
    }
    ++files;
  }
  CHECK(files >= 30);
}

TEST_CASE("typed round trips") {
  for (const auto& [name, c] : fx::complexes()) {
    const PolyComplex back = io::complex_from_json(io::to_json(*c));
    CHECK(back.vertices() == c->vertices());
    CHECK(back.cells() == c->cells());
  }
  const auto t = fx::twisted_boundary();
  const auto back = io::subdivision_from_json(io::to_json(t));
  CHECK(same_cells(back.refined, t.refined));
  CHECK(back.carrier == t.carrier);

  const VerticialLifting f{{0, Rational(-3, 7)}, {4, 2}};
  CHECK(io::lifting_from_json(io::to_json(f)) == f);

  for (const auto& cc : fx::conical_cases()) {
    const auto again = io::conical_from_json(io::to_json(*cc.complex, &cc.h));
    CHECK(again == *cc.complex);
    const auto h = io::slicing_from_json(io::to_json(*cc.complex, &cc.h));
    REQUIRE(h);
    CHECK(h->ray_values == cc.h.ray_values);
  }
  const auto m = fx::remark_morphism();
  const auto m2 = io::morphism_from_json(io::to_json(m));
  CHECK(*m2.source == *m.source);
  CHECK(m2.source->cone_lattices() == m.source->cone_lattices());
  CHECK(m2.ray_images == m.ray_images);
}

TEST_CASE("rationals are strings in canonical form") {
  CHECK(io::to_json(Rational(3, 2)).get<std::string>() == "3/2");
  CHECK(io::rational_from_json(io::Json("-4/6")) == Rational(-2, 3));
  CHECK_ERROR(io::rational_from_json(io::Json(5)), ErrorCode::ParseError);
  CHECK_ERROR(io::rational_from_json(io::Json(0.5)), ErrorCode::ParseError);
  CHECK_ERROR(io::rational_from_json(io::Json("x")), ErrorCode::ParseError);
}

TEST_CASE("malformed documents") {
  CHECK_ERROR(io::parse("{"), ErrorCode::ParseError);
  CHECK_ERROR(io::parse("[]"), ErrorCode::ParseError);
  CHECK_ERROR(io::parse(R"({"kind":"complex","version":2,"payload":{}})"), ErrorCode::ParseError);
  CHECK_ERROR(io::parse(R"({"kind":"teapot","version":1,"payload":{}})"), ErrorCode::ParseError);
  CHECK_ERROR(io::parse(R"({"kind":"complex","version":1})"), ErrorCode::ParseError);
  const auto doc = io::parse(R"({"kind":"complex","version":1,"payload":{"ambient_dim":2}})");
  CHECK_ERROR(io::expect(doc, "lifting"), ErrorCode::ParseError);
  CHECK_ERROR(io::complex_from_json(doc.payload), ErrorCode::ParseError);
  const auto bad_cell = io::parse(
      R"({"kind":"complex","version":1,"payload":{"ambient_dim":1,
          "vertices":[{"id":0,"point":["0"]},{"id":1,"point":["1"]}],"cells":[[0,"a"]]}})");
  CHECK_ERROR(io::complex_from_json(bad_cell.payload), ErrorCode::ParseError);
  CHECK_ERROR(io::read_file("/nonexistent/file.json"), ErrorCode::ParseError);
}

TEST_CASE("OFF and SVG export") {
  const std::string sq = exporter::to_off(*fx::square());
  CHECK(sq.rfind("OFF\n4 1 0\n", 0) == 0);
  CHECK(sq.find("\n4 ") != std::string::npos);
  const std::string prism = exporter::to_off(*fx::prism());
  CHECK(prism.rfind("OFF\n6 5 0\n", 0) == 0);
  const auto tri = induced_subdivision(fx::prism(), fx::staircase_lifting());
  CHECK(exporter::to_off(tri.refined).rfind("OFF\n6 12 0\n", 0) == 0);
  CHECK_ERROR(exporter::to_off(io::complex_from_json(io::read_file(fs::path(POLYTRI_FIXTURE_DIR) / "simplex4.json")
                                                         .payload)),
              ErrorCode::UnsupportedDimension);

  const auto halves = induced_subdivision(fx::square(), {{0, -1}, {1, 1}, {2, -1}, {3, 1}});
  const std::string svg = exporter::to_svg(halves.refined);
  CHECK(count(svg, "<polygon") == 2);
  CHECK(count(svg, "<circle") == 4);
  CHECK(count(exporter::to_svg(fx::square_edges()), "<line") == 2);
  CHECK_ERROR(exporter::to_svg(*fx::cube()), ErrorCode::UnsupportedDimension);
}
