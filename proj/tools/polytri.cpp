// Command-line front end. stdout carries output paths only; summaries and
// witnesses go to stderr.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "polytri/error.hpp"
#include "polytri/export.hpp"
#include "polytri/io.hpp"

namespace fs = std::filesystem;
using namespace polytri;

namespace {

// Exit codes are part of the interface; see README.
int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
      return 2;
    case ErrorCode::DomainMismatch:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NotSubcomplex:
      return 3;
    case ErrorCode::NotConvexDown:
    case ErrorCode::UnattainableValue:
      return 4;
    case ErrorCode::InputNotInduced:
      return 5;
    case ErrorCode::InputNotSimplicial:
      return 6;
    case ErrorCode::UnsupportedDimension:
      return 7;
    default:
      return 1;
  }
}

fs::path fixture_dir() {
  if (const char* env = std::getenv("POLYTRI_FIXTURES")) return env;
  return POLYTRI_FIXTURE_DIR;
}

// Input paths fall back to the fixture directory.
fs::path resolve(const std::string& name) {
  const fs::path p(name);
  if (fs::exists(p)) return p;
  const fs::path f = fixture_dir() / p;
  if (fs::exists(f)) return f;
  throw Error(ErrorCode::ParseError, "no such file: " + name);
}

std::shared_ptr<const PolyComplex> read_complex(const std::string& name) {
  const auto doc = io::read_file(resolve(name));
  return std::make_shared<const PolyComplex>(io::complex_from_json(io::expect(doc, "complex")));
}

fs::path output_path(const std::string& out, const char* fallback) { return out.empty() ? fs::path(fallback) : fs::path(out); }

void write(const fs::path& out, const io::Document& doc) {
  io::write_file(out, doc);
  std::cout << out.string() << "\n";
}

void write_text(const fs::path& out, const std::string& text) {
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out.string());
  f << text;
  std::cout << out.string() << "\n";
}

std::vector<VertexSet> parse_cells(const std::string& text) {
  std::vector<VertexSet> cells;
  std::stringstream all(text);
  std::string cell;
  while (std::getline(all, cell, ';')) {
    VertexSet ids;
    std::stringstream one(cell);
    std::string id;
    while (std::getline(one, id, ',')) {
      try {
        ids.push_back(std::stoul(id));
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad cell list \"" + text + "\"");
      }
    }
    if (!ids.empty()) cells.push_back(ids);
  }
  if (cells.empty()) throw Error(ErrorCode::ParseError, "empty cell list");
  return cells;
}

std::vector<Integer> parse_multipliers(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string k;
  while (std::getline(ss, k, ',')) {
    try {
      out.emplace_back(k);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad multiplier \"" + k + "\"");
    }
  }
  return out;
}

std::string cells_summary(const PolyComplex& c) {
  std::ostringstream os;
  os << c.maximal_cells().size() << " maximal cells:";
  for (auto m : c.maximal_cells()) {
    os << " {";
    const auto& v = c.cell(m).vertices;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "}";
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regular subdivisions, triangulation extension and semistability checks in exact arithmetic"};
  app.require_subcommand(1);
  std::function<void()> action;
  std::string out;

  // subdivide
  std::string complex_file, lifting_file;
  auto* subdivide = app.add_subcommand("subdivide", "Subdivision induced by a lifting");
  subdivide->add_option("complex", complex_file, "complex document")->required();
  subdivide->add_option("lifting", lifting_file, "lifting document")->required();
  subdivide->add_option("--out", out, "output path");
  subdivide->callback([&] {
    action = [&] {
      auto complex = read_complex(complex_file);
      const auto f = io::point_lifting_from_json(io::expect(io::read_file(resolve(lifting_file)), "lifting"));
      std::map<VertexId, Point> points = complex->vertices();
      for (const auto& [id, v] : f.values) {
        if (!points.count(id) && !f.extra_points.count(id)) {
          throw Error(ErrorCode::DomainMismatch, "lifting names unknown vertex " + std::to_string(id));
        }
      }
      for (const auto& [id, p] : f.extra_points) {
        if (!points.emplace(id, p).second) throw Error(ErrorCode::DomainMismatch, "extra point reuses id " + std::to_string(id));
      }
      Subdivision sub;
      if (f.extra_points.empty()) {
        sub = induced_subdivision(complex, f.values);
      } else {
        try {
          sub = induced_subdivision(minimal_extension(complex, points, f.values));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::UnattainableValue) throw;
          throw Error(ErrorCode::NotConvexDown, e.what());
        }
      }
      std::cerr << "subdivision with " << cells_summary(sub.refined) << "\n";
      write(output_path(out, "subdivision.json"), {"subdivision", io::kVersion, io::to_json(sub)});
    };
  });

  // extend
  std::string selector = "boundary", boundary_file, certificate_file;
  std::optional<std::uint64_t> seed;
  auto* extend = app.add_subcommand("extend", "Extend a regular triangulation of a subcomplex");
  extend->add_option("complex", complex_file, "complex document")->required();
  extend->add_option("--sub", selector, "\"boundary\" or maximal cells like \"0,1;2,3\"")->default_val("boundary");
  extend->add_option("--lifting", lifting_file, "lifting on the subcomplex vertices")->required();
  extend->add_option("--boundary-triangulation", boundary_file, "subdivision of the subcomplex (default: induced)");
  extend->add_option("--emit-certificate", certificate_file, "write the composed lifting here");
  extend->add_option("--seed", seed, "use a random generic lifting with this seed instead of pulling");
  extend->add_option("--out", out, "output path");
  extend->callback([&] {
    action = [&] {
      auto complex = read_complex(complex_file);
      PolyComplex sub;
      if (selector == "boundary") {
        sub = boundary(*complex);
      } else {
        sub = subcomplex(*complex, parse_cells(selector));
      }
      const auto f0 = io::lifting_from_json(io::expect(io::read_file(resolve(lifting_file)), "lifting"));
      Subdivision sub_tri;
      if (boundary_file.empty()) {
        sub_tri = induced_subdivision(std::make_shared<const PolyComplex>(sub), f0);
      } else {
        sub_tri = io::subdivision_from_json(io::expect(io::read_file(resolve(boundary_file)), "subdivision"));
      }
      for (const auto& [id, v] : f0) {
        if (!sub_tri.refined.has_vertex(id)) {
          throw Error(ErrorCode::DomainMismatch, "lifting names vertex " + std::to_string(id) + " outside the subcomplex");
        }
      }
      GenericStrategy strategy = PullingStrategy{};
      if (seed) strategy = RandomStrategy{*seed};
      const Extension ext = extend_triangulation(complex, sub, sub_tri, f0, strategy);
      std::cerr << "triangulation with " << cells_summary(ext.triangulation.refined) << "\n";
      write(output_path(out, "extension.json"), {"subdivision", io::kVersion, io::to_json(ext.triangulation)});
      if (!certificate_file.empty()) {
        const auto induced = induced_subdivision(complex, ext.composed.values);
        if (!same_cells(induced.refined, ext.triangulation.refined)) {
          throw std::logic_error("composed lifting does not verify");
        }
        std::cerr << "certificate verified (epsilon " << format_rational(ext.epsilon) << ")\n";
        write(certificate_file, {"lifting", io::kVersion, io::to_json(ext.composed.values)});
      }
    };
  });

  // check-regular
  std::string subdivision_file;
  auto* check_regular = app.add_subcommand("check-regular", "Decide whether a subdivision is induced by a lifting");
  check_regular->add_option("subdivision", subdivision_file, "subdivision document")->required();
  check_regular->add_option("--out", out, "output path");
  check_regular->callback([&] {
    action = [&] {
      const auto sub = io::subdivision_from_json(io::expect(io::read_file(resolve(subdivision_file)), "subdivision"));
      const auto result = is_regular(sub);
      if (const auto* cert = std::get_if<RegularityCertificate>(&result)) {
        std::cerr << "REGULAR (margin " << format_rational(cert->margin) << ")\n";
        write(output_path(out, "regularity.json"), {"report", io::kVersion, io::to_json(*cert)});
      } else {
        const auto& w = std::get<NonRegularityWitness>(result);
        std::cerr << "NOT REGULAR: " << w.infeasible_constraint_subset.size()
                  << " fold constraints combine to 0 >= 1\n";
        write(output_path(out, "regularity.json"), {"report", io::kVersion, io::to_json(w)});
      }
    };
  });

  // enumerate
  unsigned jobs = 1;
  auto* enumerate = app.add_subcommand("enumerate", "List all triangulations without new vertices");
  enumerate->add_option("complex", complex_file, "complex document")->required();
  enumerate->add_option("--jobs", jobs, "worker threads")->default_val(1)->check(CLI::PositiveNumber);
  enumerate->add_option("--out", out, "output path");
  enumerate->callback([&] {
    action = [&] {
      auto complex = read_complex(complex_file);
      const auto all = enumerate_triangulations(complex, jobs);
      io::Json list = io::Json::array();
      for (const auto& t : all) list.push_back(io::to_json(t.refined)["cells"]);
      std::cerr << all.size() << " triangulations\n";
      write(output_path(out, "triangulations.json"), {"report", io::kVersion, {{"type", "triangulations"}, {"count", all.size()}, {"triangulations", list}}});
    };
  });

  // cone
  auto* cone = app.add_subcommand("cone", "Cone over a compact complex");
  cone->add_option("complex", complex_file, "complex document")->required();
  cone->add_option("--out", out, "output path");
  cone->callback([&] {
    action = [&] {
      const auto [c, h] = cone_over(*read_complex(complex_file));
      std::cerr << "cone with " << c.rays().size() << " rays and " << c.maximal_cones().size() << " maximal cones\n";
      write(output_path(out, "cone.json"), {"conical", io::kVersion, io::to_json(c, &h)});
    };
  });

  // slice
  std::string conical_file;
  auto* slice_cmd = app.add_subcommand("slice", "Slice a conical complex at height 1");
  slice_cmd->add_option("conical", conical_file, "conical document")->required();
  slice_cmd->add_option("--out", out, "output path");
  slice_cmd->callback([&] {
    action = [&] {
      const auto doc = io::read_file(resolve(conical_file));
      const auto& payload = io::expect(doc, "conical");
      const auto c = io::conical_from_json(payload);
      auto h = io::slicing_from_json(payload);
      if (!h) h = find_slicing_function(c);
      if (!h) throw Error(ErrorCode::NoSlicingFunction, "no positive function is linear on every cone");
      const auto s = slice(c, *h);
      std::cerr << "slice with " << cells_summary(s) << "\n";
      write(output_path(out, "slice.json"), {"complex", io::kVersion, io::to_json(s)});
    };
  });

  // check-semistable
  std::string morphism_file, multipliers;
  bool reduce = false;
  auto* semistable = app.add_subcommand("check-semistable", "Nearly-semistable conditions of a morphism to an orthant");
  semistable->add_option("morphism", morphism_file, "morphism document")->required();
  semistable->add_option("--subdivision", subdivision_file, "conical subdivision of the source (default: trivial)");
  semistable->add_flag("--reduce", reduce, "run base change and extension first (trivial boundary data)");
  semistable->add_option("--multipliers", multipliers, "base change multipliers, e.g. 2,1");
  semistable->add_option("--out", out, "output path");
  semistable->callback([&] {
    action = [&] {
      const auto f = io::morphism_from_json(io::expect(io::read_file(resolve(morphism_file)), "morphism"));
      SemistabilityReport report;
      io::Json payload;
      if (reduce) {
        std::vector<Integer> k(f.target.n, 1);
        if (!multipliers.empty()) k = parse_multipliers(multipliers);
        const auto r = weak_to_nearly_semistable(f, trivial_boundary_data(f, k));
        report = r.report;
        payload = io::to_json(report);
        payload["subdivision"] = io::to_json(r.subdivision);
        payload["morphism"] = io::to_json(r.morphism);
      } else {
        ConicalSubdivision sub = trivial_conical_subdivision(f.source);
        if (!subdivision_file.empty()) {
          sub = io::conical_subdivision_from_json(
              io::expect(io::read_file(resolve(subdivision_file)), "subdivision"));
        }
        report = check_nearly_semistable(f, sub);
        payload = io::to_json(report);
      }
      std::cerr << "nearly semistable: " << (report.nearly_semistable() ? "yes" : "no")
                << "; semistable: " << (report.semistable() ? "yes" : "no") << "\n";
      for (const auto* list : {&report.equidimensional_witnesses, &report.reduced_witnesses, &report.codim1_witnesses}) {
        for (const auto& w : *list) std::cerr << "  " << w << "\n";
      }
      write(output_path(out, "semistability.json"), {"report", io::kVersion, payload});
    };
  });

  // export
  std::string input, format = "off";
  auto* export_cmd = app.add_subcommand("export", "Write OFF or SVG geometry");
  export_cmd->add_option("input", input, "subdivision or complex document")->required();
  export_cmd->add_option("--format", format, "off or svg")->check(CLI::IsMember({"off", "svg"}))->default_val("off");
  export_cmd->add_option("--out", out, "output path");
  export_cmd->callback([&] {
    action = [&] {
      const auto doc = io::read_file(resolve(input));
      PolyComplex c;
      if (doc.kind == "subdivision") {
        c = io::subdivision_from_json(doc.payload).refined;
      } else {
        c = io::complex_from_json(io::expect(doc, "complex"));
      }
      const std::string text = format == "off" ? exporter::to_off(c) : exporter::to_svg(c);
      if (out.empty()) out = "export." + format;
      std::cerr << "exported " << c.maximal_cells().size() << " cells\n";
      write_text(out, text);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    action();
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
