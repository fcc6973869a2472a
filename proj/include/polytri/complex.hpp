#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "polytri/hull.hpp"
#include "polytri/linalg.hpp"
#include "polytri/rational.hpp"

namespace polytri {

using VertexId = std::size_t;
using VertexSet = std::vector<VertexId>;  // sorted

struct Cell {
  VertexSet vertices;
  int dim = 0;

  bool simplicial() const { return static_cast<int>(vertices.size()) == dim + 1; }
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Lattice N of an ambient chart; the columns of `basis` generate it.
struct IntegralStructure {
  Matrix basis;

  static IntegralStructure standard(std::size_t n) { return {Matrix::identity(n)}; }
  friend bool operator==(const IntegralStructure&, const IntegralStructure&) = default;
};

/// A cell described by the points of its vertices, independent of labels.
using CellShape = std::vector<Point>;  // sorted by PointLess

/// Compact polyhedral complex with one global ambient chart.
///
/// Cells are identified by their vertex sets and the complex stores every
/// face, so it is face-closed by construction. Cells are kept sorted by
/// (dimension, vertex set).
class PolyComplex {
 public:
  PolyComplex() = default;

  /// Assembles a complex from cells known to be polytopes given by their
  /// exact vertex sets and known to intersect properly. No validation beyond
  /// face closure; use build_complex for untrusted input.
  static PolyComplex assemble(std::size_t ambient_dim, std::map<VertexId, Point> vertices,
                              std::span<const VertexSet> maximal_cells, IntegralStructure integral);
  /// Same, from an already face-closed cell list.
  static PolyComplex from_closed_cells(std::size_t ambient_dim, std::map<VertexId, Point> vertices,
                                       std::vector<Cell> cells, IntegralStructure integral);

  std::size_t ambient_dim() const { return ambient_dim_; }
  int dimension() const;
  const std::map<VertexId, Point>& vertices() const { return vertices_; }
  const Point& point(VertexId id) const { return vertices_.at(id); }
  bool has_vertex(VertexId id) const { return vertices_.count(id) != 0; }
  const std::vector<Cell>& cells() const { return cells_; }
  const Cell& cell(std::size_t index) const { return cells_[index]; }
  const IntegralStructure& integral() const { return integral_; }

  std::optional<std::size_t> find_cell(const VertexSet& vertices) const;
  /// Indices of cells not contained in a larger cell.
  std::vector<std::size_t> maximal_cells() const;
  /// Indices of the faces of a cell (including itself).
  std::vector<std::size_t> faces_of(std::size_t index) const;
  std::vector<Point> cell_points(std::size_t index) const;
  CellShape shape(std::size_t index) const;

  /// Smallest cell containing every given point, if any.
  std::optional<std::size_t> carrier_of(std::span<const Point> points) const;
  /// Smallest cell whose vertex set contains `ids` (all ids must be vertices).
  std::optional<std::size_t> carrier_of_vertices(const VertexSet& ids) const;

  std::set<CellShape> shapes() const;
  std::set<Point, PointLess> vertex_points() const;

 private:
  std::size_t ambient_dim_ = 0;
  std::map<VertexId, Point> vertices_;
  std::vector<Cell> cells_;
  std::map<VertexSet, std::size_t> index_;
  std::vector<std::size_t> maximal_;
  IntegralStructure integral_;
};

/// Validating constructor. Errors: DimensionMismatch, RedundantVertex,
/// NotIntersectionClosed, DegenerateInput (repeated coordinates), DomainMismatch
/// (unknown vertex id).
PolyComplex build_complex(const std::map<VertexId, Point>& vertices, std::span<const VertexSet> maximal_cells,
                          IntegralStructure integral);
/// Vertices get ids 0..n-1 in list order.
PolyComplex build_complex(std::span<const Point> vertices, std::span<const VertexSet> maximal_cells,
                          IntegralStructure integral);

/// Whether two polytopes (given by vertex points) meet in a common face whose
/// vertices are exactly `shared`.
bool intersect_properly(std::span<const Point> first, std::span<const Point> second,
                        std::span<const Point> shared);

PolyComplex skeleton(const PolyComplex& complex, int k);
/// Cells of facets lying in exactly one top-dimensional cell, with their faces.
/// Throws NotPure.
PolyComplex boundary(const PolyComplex& complex);
/// Closure of the listed cells. Throws NotSubcomplex for a non-cell.
PolyComplex subcomplex(const PolyComplex& complex, std::span<const VertexSet> cells);
bool is_subcomplex(const PolyComplex& sub, const PolyComplex& complex);

/// A complex refining a parent with |refined| = |parent|.
struct Subdivision {
  PolyComplex refined;
  std::shared_ptr<const PolyComplex> parent;
  /// carrier[i] = index in *parent of the smallest cell containing refined cell i.
  std::vector<std::size_t> carrier;

  const PolyComplex& base() const { return *parent; }
};

/// Validates that `candidate` subdivides `parent`. Throws CellNotContained or
/// NotComplete; the message names a witness cell or point.
Subdivision is_subdivision(const PolyComplex& candidate, const PolyComplex& parent);
Subdivision is_subdivision(const PolyComplex& candidate, std::shared_ptr<const PolyComplex> parent);

/// Assembles a subdivision from trusted maximal cells (for instance pieces of
/// upper hulls); carriers are computed, completeness is not re-checked.
Subdivision make_subdivision(std::shared_ptr<const PolyComplex> parent, std::map<VertexId, Point> vertices,
                             std::span<const VertexSet> maximal_cells);

/// Refined vertices lying in the given cell of the parent.
std::vector<VertexId> vertices_in(const Subdivision& subdivision, std::size_t parent_cell);

/// Subdivision whose refined complex is the parent itself.
Subdivision trivial_subdivision(std::shared_ptr<const PolyComplex> parent);

/// Refined cells lying in the subcomplex, as a subdivision of it.
Subdivision restrict_subdivision(const Subdivision& subdivision, const PolyComplex& subcomplex);

/// Equality of the geometric cells, ignoring vertex labels.
bool same_cells(const PolyComplex& a, const PolyComplex& b);

}  // namespace polytri
