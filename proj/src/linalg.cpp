#include "polytri/linalg.hpp"

#include <cassert>
#include <utility>

namespace polytri {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(std::span<const Point> rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_columns(std::span<const Point> columns) {
  Matrix m(columns.empty() ? 0 : columns[0].size(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = columns[c][r];
  }
  return m;
}

Point Matrix::row(std::size_t r) const {
  return Point(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Point Matrix::column(std::size_t c) const {
  Point p(rows_);
  for (std::size_t r = 0; r < rows_; ++r) p[r] = (*this)(r, c);
  return p;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  assert(a.cols() == b.rows());
  Matrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += a(i, k) * b(k, j);
    }
  }
  return m;
}

Point operator*(const Matrix& a, const Point& x) {
  assert(a.cols() == x.size());
  Point y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) y[i] += a(i, k) * x[k];
  }
  return y;
}

std::vector<std::size_t> row_reduce(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    }
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(const Matrix& m) {
  Matrix copy = m;
  return row_reduce(copy).size();
}

Rational determinant(Matrix m) {
  assert(m.rows() == m.cols());
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

std::optional<Point> solve(const Matrix& a, const Point& b) {
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const auto pivots = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  Point x(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return x;
}

std::vector<Point> nullspace(const Matrix& a) {
  Matrix m = a;
  const auto pivots = row_reduce(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Point> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Point v(a.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Matrix> inverse(const Matrix& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) return std::nullopt;
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  const auto pivots = row_reduce(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  }
  return inv;
}

std::vector<std::size_t> affine_basis_indices(std::span<const Point> points) {
  std::vector<std::size_t> chosen;
  if (points.empty()) return chosen;
  chosen.push_back(0);
  // Incremental echelon basis of the difference vectors.
  std::vector<Point> echelon;
  std::vector<std::size_t> lead;
  for (std::size_t i = 1; i < points.size(); ++i) {
    Point v = points[i] - points[0];
    for (std::size_t k = 0; k < echelon.size(); ++k) {
      if (sgn(v[lead[k]]) == 0) continue;
      const Rational f = v[lead[k]] / echelon[k][lead[k]];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * echelon[k][j];
    }
    std::size_t l = 0;
    while (l < v.size() && sgn(v[l]) == 0) ++l;
    if (l == v.size()) continue;
    echelon.push_back(std::move(v));
    lead.push_back(l);
    chosen.push_back(i);
  }
  return chosen;
}

int affine_dimension(std::span<const Point> points) {
  return static_cast<int>(affine_basis_indices(points).size()) - 1;
}

AffineFrame::AffineFrame(std::span<const Point> points) {
  const auto idx = affine_basis_indices(points);
  if (idx.empty()) return;
  origin_ = points[idx[0]];
  for (std::size_t k = 1; k < idx.size(); ++k) directions_.push_back(points[idx[k]] - origin_);
  const std::size_t d = directions_.size();
  if (d == 0) return;
  // Pick d rows of the (n x d) direction matrix that form an invertible block.
  Matrix t = Matrix::from_rows(directions_);  // d x n
  Matrix reduced = t;
  pivot_rows_ = row_reduce(reduced);
  Matrix block(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) block(i, j) = directions_[j][pivot_rows_[i]];
  }
  pivot_inverse_ = *inverse(block);
}

std::optional<Point> AffineFrame::coordinates(const Point& p) const {
  if (origin_.empty() && !p.empty()) return std::nullopt;
  const Point diff = p - origin_;
  const std::size_t d = directions_.size();
  Point rhs(d);
  for (std::size_t i = 0; i < d; ++i) rhs[i] = diff[pivot_rows_[i]];
  Point y = d ? pivot_inverse_ * rhs : Point{};
  if (to_ambient(y) != p) return std::nullopt;
  return y;
}

Point AffineFrame::to_ambient(const Point& intrinsic) const {
  Point p = origin_;
  for (std::size_t k = 0; k < directions_.size(); ++k) {
    if (sgn(intrinsic[k]) == 0) continue;
    for (std::size_t j = 0; j < p.size(); ++j) p[j] += intrinsic[k] * directions_[k][j];
  }
  return p;
}

std::optional<std::vector<Rational>> barycentric(std::span<const Point> basis, const Point& p) {
  const std::size_t k = basis.size();
  const std::size_t n = p.size();
  Matrix a(n + 1, k);
  Point b(n + 1);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < n; ++i) a(i, j) = basis[j][i];
    a(n, j) = 1;
  }
  for (std::size_t i = 0; i < n; ++i) b[i] = p[i];
  b[n] = 1;
  return solve(a, b);
}

}  // namespace polytri
