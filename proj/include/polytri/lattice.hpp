#pragma once

#include <span>
#include <vector>

#include "polytri/linalg.hpp"
#include "polytri/rational.hpp"

namespace polytri::lattice {

/// Basis (as columns of an n x r matrix) of the group generated by rational vectors.
Matrix basis_from_generators(std::span<const Point> generators, std::size_t n);

/// Basis of the integer solutions y of  A y in Z^m  (A is m x d, rational).
Matrix integral_preimage(const Matrix& a);

/// Basis of L ∩ span(vectors), where L is generated by the columns of `basis`
/// (n x r, full column rank).
Matrix intersect_with_span(const Matrix& basis, std::span<const Point> vectors);

/// Basis of { x in L : map x in T }, L spanned by columns of `domain`, T by
/// the columns of `target` (nonsingular, square).
Matrix preimage(const Matrix& domain, const Matrix& map, const Matrix& target);

/// Coordinates of x in the given basis, nullopt when x is off its span.
std::optional<Point> coordinates(const Matrix& basis, const Point& x);

bool contains(const Matrix& basis, const Point& x);

/// First lattice point on the ray through `direction` (which must lie in the
/// span of the lattice).
Point primitive_vector(const Matrix& basis, const Point& direction);

/// |det| of the given vectors expressed in the lattice basis; vectors must be
/// as many as the rank of the lattice.
Rational index_of(const Matrix& basis, std::span<const Point> vectors);

}  // namespace polytri::lattice
