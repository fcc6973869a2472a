#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "polytri/conical.hpp"
#include "polytri/semistable.hpp"
#include "polytri/triangulation.hpp"

/// JSON documents  {"kind": ..., "version": 1, "payload": {...}}.
/// Rationals are written as "p" or "p/q" strings; numbers never appear as
/// floats. Output is deterministic (sorted keys, fixed indentation).
namespace polytri::io {

using Json = nlohmann::json;

inline constexpr int kVersion = 1;

struct Document {
  std::string kind;  // complex | conical | subdivision | lifting | morphism | report
  int version = kVersion;
  Json payload;
};

/// Errors: ParseError (malformed JSON, unknown kind or version, bad fields).
Document parse(std::string_view text);
std::string dump(const Document& doc);
Document read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const Document& doc);

/// Requires doc.kind == kind. Throws ParseError otherwise.
const Json& expect(const Document& doc, std::string_view kind);

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);
Json to_json(const Point& p);
Point point_from_json(const Json& j);
Json to_json(const Matrix& m);  // list of rows
Matrix matrix_from_json(const Json& j);

Json to_json(const PolyComplex& c);
PolyComplex complex_from_json(const Json& j);

/// Optional slicing values are stored alongside the complex.
Json to_json(const ConicalComplex& c, const SlicingFunction* h = nullptr);
ConicalComplex conical_from_json(const Json& j);
std::optional<SlicingFunction> slicing_from_json(const Json& j);

/// {"type": "compact", "parent", "refined", "carriers"}.
Json to_json(const Subdivision& s);
Subdivision subdivision_from_json(const Json& j);
/// {"type": "conical", ...}.
Json to_json(const ConicalSubdivision& s);
ConicalSubdivision conical_subdivision_from_json(const Json& j);

/// {"values": [{"id", "value"}], "extra_rays": [{"id", "generator"}]}.
Json to_json(const VerticialLifting& f);
Json to_json(const HomogeneousLifting& f);
VerticialLifting lifting_from_json(const Json& j);
HomogeneousLifting homogeneous_lifting_from_json(const Json& j);

/// Values on the vertices plus on extra points of the complex, as taken by
/// minimal_extension: {"values", "extra_points": [{"id", "point"}]}.
struct PointLifting {
  VerticialLifting values;
  std::map<VertexId, Point> extra_points;
};
PointLifting point_lifting_from_json(const Json& j);

Json to_json(const ConicalMorphism& f);
ConicalMorphism morphism_from_json(const Json& j);

Json to_json(const RegularityCertificate& c);
Json to_json(const NonRegularityWitness& w);
Json to_json(const SemistabilityReport& r);

}  // namespace polytri::io
