#include "polytri/lattice.hpp"

#include <cassert>
#include <utility>

#include "polytri/error.hpp"

namespace polytri::lattice {

namespace {

using IntRow = std::vector<Integer>;

// Row Hermite reduction; returns the nonzero rows, which form a basis of the
// row lattice.
std::vector<IntRow> row_hermite(std::vector<IntRow> rows, std::size_t cols) {
  std::size_t pivot = 0;
  for (std::size_t c = 0; c < cols && pivot < rows.size(); ++c) {
    // Euclid on column c among rows pivot..end.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = pivot; r < rows.size(); ++r) {
        if (rows[r][c] != 0 && (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c]))) best = r;
      }
      if (best == rows.size()) break;
      std::swap(rows[pivot], rows[best]);
      bool done = true;
      for (std::size_t r = pivot + 1; r < rows.size(); ++r) {
        if (rows[r][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[pivot][c].get_mpz_t());
        for (std::size_t j = 0; j < cols; ++j) rows[r][j] -= q * rows[pivot][j];
        if (rows[r][c] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[pivot][c] != 0) {
      if (rows[pivot][c] < 0) {
        for (auto& v : rows[pivot]) v = -v;
      }
      ++pivot;
    }
  }
  rows.resize(pivot);
  return rows;
}

// Basis of { y in Z^n : K y = 0 } by unimodular column operations.
std::vector<IntRow> integer_kernel(const std::vector<IntRow>& k, std::size_t n) {
  std::vector<IntRow> m = k;
  std::vector<IntRow> u(n, IntRow(n));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  auto col_op = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (auto& row : m) row[dst] -= q * row[src];
    for (auto& row : u) row[dst] -= q * row[src];
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    for (auto& row : m) std::swap(row[a], row[b]);
    for (auto& row : u) std::swap(row[a], row[b]);
  };
  std::size_t pivot = 0;
  for (std::size_t r = 0; r < m.size() && pivot < n; ++r) {
    while (true) {
      std::size_t best = n;
      for (std::size_t c = pivot; c < n; ++c) {
        if (m[r][c] != 0 && (best == n || abs(m[r][c]) < abs(m[r][best]))) best = c;
      }
      if (best == n) break;
      col_swap(pivot, best);
      bool done = true;
      for (std::size_t c = pivot + 1; c < n; ++c) {
        if (m[r][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m[r][c].get_mpz_t(), m[r][pivot].get_mpz_t());
        col_op(c, pivot, q);
        if (m[r][c] != 0) done = false;
      }
      if (done) break;
    }
    if (m[r][pivot] != 0) ++pivot;
  }
  std::vector<IntRow> kernel;
  for (std::size_t c = pivot; c < n; ++c) {
    IntRow v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = u[i][c];
    kernel.push_back(std::move(v));
  }
  return kernel;
}

Matrix columns_to_matrix(const std::vector<Point>& cols, std::size_t n) {
  Matrix m(n, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t r = 0; r < n; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

}  // namespace

Matrix basis_from_generators(std::span<const Point> generators, std::size_t n) {
  std::vector<Rational> all;
  for (const auto& g : generators) all.insert(all.end(), g.begin(), g.end());
  const Integer den = lcm_of_denominators(all);
  std::vector<IntRow> rows;
  for (const auto& g : generators) {
    IntRow r(n);
    for (std::size_t j = 0; j < n; ++j) {
      Rational v = g[j] * den;
      r[j] = v.get_num();
    }
    rows.push_back(std::move(r));
  }
  std::vector<Point> cols;
  for (const auto& r : row_hermite(std::move(rows), n)) {
    Point p(n);
    for (std::size_t j = 0; j < n; ++j) p[j] = Rational(r[j]) / Rational(den);
    cols.push_back(std::move(p));
  }
  return columns_to_matrix(cols, n);
}

Matrix integral_preimage(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t d = a.cols();
  std::vector<Rational> all;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < d; ++j) all.push_back(a(i, j));
  }
  const Integer den = lcm_of_denominators(all);
  // [den*A | -den*I] (y, z) = 0  <=>  A y = z integral.
  std::vector<IntRow> k(m, IntRow(d + m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < d; ++j) k[i][j] = Rational(a(i, j) * den).get_num();
    k[i][d + i] = -den;
  }
  std::vector<Point> gens;
  for (const auto& v : integer_kernel(k, d + m)) {
    Point y(d);
    for (std::size_t j = 0; j < d; ++j) y[j] = v[j];
    gens.push_back(std::move(y));
  }
  return basis_from_generators(gens, d);
}

std::optional<Point> coordinates(const Matrix& basis, const Point& x) { return solve(basis, x); }

bool contains(const Matrix& basis, const Point& x) {
  auto y = coordinates(basis, x);
  if (!y) return false;
  for (const auto& v : *y) {
    if (v.get_den() != 1) return false;
  }
  return true;
}

Matrix intersect_with_span(const Matrix& basis, std::span<const Point> vectors) {
  // Work in lattice coordinates: the span becomes a rational subspace W of
  // Q^r and the answer is Z^r ∩ W, the integer kernel of W's annihilator.
  const std::size_t r = basis.cols();
  std::vector<Point> coords;
  for (const auto& v : vectors) coords.push_back(*coordinates(basis, v));
  const auto annihilator = nullspace(Matrix::from_rows(coords));
  Matrix ann(annihilator.size(), r);
  for (std::size_t i = 0; i < annihilator.size(); ++i) {
    for (std::size_t j = 0; j < r; ++j) ann(i, j) = annihilator[i][j];
  }
  std::vector<Rational> all;
  for (std::size_t i = 0; i < ann.rows(); ++i) {
    for (std::size_t j = 0; j < r; ++j) all.push_back(ann(i, j));
  }
  const Integer den = lcm_of_denominators(all);
  std::vector<IntRow> k(ann.rows(), IntRow(r));
  for (std::size_t i = 0; i < ann.rows(); ++i) {
    for (std::size_t j = 0; j < r; ++j) k[i][j] = Rational(ann(i, j) * den).get_num();
  }
  std::vector<Point> gens;
  for (const auto& v : integer_kernel(k, r)) {
    Point y(r);
    for (std::size_t j = 0; j < r; ++j) y[j] = v[j];
    gens.push_back(basis * y);
  }
  return basis_from_generators(gens, basis.rows());
}

Matrix preimage(const Matrix& domain, const Matrix& map, const Matrix& target) {
  // y in Z^d with T^{-1} M B y integral.
  const Matrix tinv = *inverse(target);
  const Matrix a = tinv * (map * domain);
  const Matrix ybasis = integral_preimage(a);
  return domain * ybasis;
}

Point primitive_vector(const Matrix& basis, const Point& direction) {
  auto y = coordinates(basis, direction);
  if (!y) throw Error(ErrorCode::DomainMismatch, "direction " + format_point(direction) + " is off the lattice span");
  Point v = *y;
  const Integer den = lcm_of_denominators(v);
  Integer g = 0;
  for (auto& c : v) {
    c *= den;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
  }
  assert(g != 0);
  for (auto& c : v) c /= Rational(g);
  return basis * v;
}

Rational index_of(const Matrix& basis, std::span<const Point> vectors) {
  const std::size_t r = basis.cols();
  Matrix m(r, vectors.size());
  for (std::size_t c = 0; c < vectors.size(); ++c) {
    const auto y = coordinates(basis, vectors[c]);
    if (!y) throw Error(ErrorCode::DomainMismatch, "vector " + format_point(vectors[c]) + " is off the lattice span");
    for (std::size_t i = 0; i < r; ++i) m(i, c) = (*y)[i];
  }
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "index needs as many vectors as the lattice rank");
  return abs(determinant(m));
}

}  // namespace polytri::lattice
