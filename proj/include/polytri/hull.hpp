#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "polytri/linalg.hpp"
#include "polytri/rational.hpp"

namespace polytri {

using IndexSet = std::vector<std::size_t>;  // sorted, duplicate-free

/// Supporting hyperplane `normal . x <= offset`, tight exactly on `points`.
struct HullFacet {
  Point normal;
  Rational offset;
  IndexSet points;
};

/// Convex hull of a finite point set, computed in the intrinsic coordinates of
/// its affine hull. Facets may be non-simplicial; `points` of a facet lists
/// every input point on it, vertices or not.
struct Hull {
  int dimension = -1;
  AffineFrame frame;
  std::vector<HullFacet> facets;  // intrinsic coordinates
  IndexSet vertices;
};

/// Incremental beneath-beyond over exact rationals. Points must be distinct.
/// Throws DegenerateInput for an empty or duplicated input.
Hull convex_hull(std::span<const Point> points);

/// Same algorithm on points that already affinely span their ambient space.
Hull full_dimensional_hull(std::span<const Point> points);

/// Upper faces of the lifted configuration {(p_i, h_i)}.
///
/// A piece is the index set of all points on one upper facet; its projection
/// is a cell of the induced decomposition of conv(points), whose vertices are
/// `piece_vertices`. Points not on any upper facet are listed in `below`.
struct UpperHull {
  std::vector<IndexSet> pieces;
  std::vector<IndexSet> piece_vertices;
  IndexSet below;
  /// Affine function (in intrinsic coordinates of the base) per piece:
  /// height = dot(gradient, y) + constant.
  std::vector<Point> gradients;
  std::vector<Rational> constants;
  AffineFrame frame;
};

UpperHull upper_hull(std::span<const Point> points, std::span<const Rational> heights);

/// All nonempty faces of conv(points) as index sets of vertices, including the
/// polytope itself. Non-vertex input points never appear.
std::vector<IndexSet> face_lattice(std::span<const Point> points);

/// Triangulation of conv(points) by iterated pulling of the smallest vertex
/// index; simplices are index sets into `points`.
std::vector<IndexSet> pulling_triangulation(std::span<const Point> points);

/// Volume of conv(points) measured in the coordinates of `frame`
/// (which must contain the points and have the same dimension as the hull).
Rational polytope_volume(std::span<const Point> points, const AffineFrame& frame);

/// Volume of a simplex (d+1 points) in frame coordinates.
Rational simplex_volume(std::span<const Point> simplex, const AffineFrame& frame);

/// Facet description of a polytope for exact membership tests.
class HRepresentation {
 public:
  HRepresentation() = default;
  explicit HRepresentation(std::span<const Point> points);

  bool contains(const Point& p) const;
  /// True when p lies in the relative interior.
  bool contains_relative_interior(const Point& p) const;
  int dimension() const { return dimension_; }
  const AffineFrame& frame() const { return frame_; }

 private:
  int dimension_ = -1;
  AffineFrame frame_;
  std::vector<HullFacet> facets_;
};

}  // namespace polytri
