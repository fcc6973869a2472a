#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "polytri/rational.hpp"

namespace polytri {

/// Dense row-major matrix over the rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::span<const Point> rows);
  static Matrix from_columns(std::span<const Point> columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Point row(std::size_t r) const;
  Point column(std::size_t c) const;
  Matrix transpose() const;

  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Point operator*(const Matrix& a, const Point& x);

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> row_reduce(Matrix& m);

std::size_t rank(const Matrix& m);
Rational determinant(Matrix m);

/// Some solution of A x = b, or nullopt when the system is inconsistent.
std::optional<Point> solve(const Matrix& a, const Point& b);

/// Basis of { x : A x = 0 }.
std::vector<Point> nullspace(const Matrix& a);

std::optional<Matrix> inverse(const Matrix& a);

/// Dimension of the affine hull (-1 for an empty set).
int affine_dimension(std::span<const Point> points);

/// Indices of a maximal affinely independent subset, chosen greedily in order.
std::vector<std::size_t> affine_basis_indices(std::span<const Point> points);

/// Coordinates on the affine hull of a point set.
///
/// The frame is origin + span(directions), with directions taken from the
/// points themselves, so every point of the hull has rational coordinates.
class AffineFrame {
 public:
  AffineFrame() = default;
  explicit AffineFrame(std::span<const Point> points);

  int dimension() const { return static_cast<int>(directions_.size()); }
  std::size_t ambient_dimension() const { return origin_.size(); }

  /// Intrinsic coordinates, or nullopt when the point is off the affine hull.
  std::optional<Point> coordinates(const Point& p) const;
  Point to_ambient(const Point& intrinsic) const;
  bool contains(const Point& p) const { return coordinates(p).has_value(); }

  const Point& origin() const { return origin_; }
  const std::vector<Point>& directions() const { return directions_; }

 private:
  Point origin_;
  std::vector<Point> directions_;
  // rows: a left inverse of the direction matrix restricted to pivot rows
  std::vector<std::size_t> pivot_rows_;
  Matrix pivot_inverse_;
};

/// Affine coordinates (weights summing to one) of `p` with respect to an
/// affinely independent family; nullopt when `p` is off their affine hull.
std::optional<std::vector<Rational>> barycentric(std::span<const Point> basis, const Point& p);

}  // namespace polytri
