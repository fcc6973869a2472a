#pragma once

// Independent reference computations used to check the library. Nothing here
// calls into the hull, LP or linear algebra code under test.

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "polytri/complex.hpp"
#include "polytri/lifting.hpp"

namespace oracle {

using polytri::Point;
using polytri::Rational;
using polytri::VertexId;
using polytri::VertexSet;

/// Gaussian elimination on an augmented system; returns one solution or
/// nullopt when inconsistent. Free variables are set to zero.
inline std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> rows, std::size_t unknowns) {
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < unknowns && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Rational lead = rows[r][c];
    for (auto& x : rows[r]) x /= lead;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rational m = rows[i][c];
      for (std::size_t k = 0; k <= unknowns; ++k) rows[i][k] -= m * rows[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i) {
    if (rows[i][unknowns] != 0) return std::nullopt;
  }
  std::vector<Rational> x(unknowns);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = rows[i][unknowns];
  return x;
}

inline Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      const Rational f = m[i][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[i][k] -= f * m[c][k];
    }
  }
  return det;
}

inline std::size_t rank(std::vector<std::vector<Rational>> m) {
  if (m.empty()) return 0;
  const std::size_t cols = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      const Rational f = m[i][c] / m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  return r;
}

/// Affine dimension of a point set.
inline int affine_dim(const std::vector<Point>& pts) {
  if (pts.empty()) return -1;
  std::vector<std::vector<Rational>> diffs;
  for (const auto& p : pts) {
    std::vector<Rational> d;
    for (std::size_t i = 0; i < p.size(); ++i) d.push_back(p[i] - pts.front()[i]);
    diffs.push_back(d);
  }
  return static_cast<int>(rank(diffs));
}

/// Maximal cells of the subdivision induced by vertex values, by brute force:
/// a subset S of a maximal cell's vertices is a cell iff some affine function
/// equals the values on S and lies strictly above them off S, and S spans the
/// cell. Every subset is tried.
inline std::set<VertexSet> induced_cells(const polytri::PolyComplex& complex, const polytri::VerticialLifting& f) {
  std::set<VertexSet> out;
  const std::size_t n = complex.ambient_dim();
  for (auto m : complex.maximal_cells()) {
    const auto& ids = complex.cell(m).vertices;
    const int dim = complex.cell(m).dim;
    const std::size_t k = ids.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
      VertexSet s;
      std::vector<Point> pts;
      for (std::size_t i = 0; i < k; ++i) {
        if (mask >> i & 1) {
          s.push_back(ids[i]);
          pts.push_back(complex.point(ids[i]));
        }
      }
      if (static_cast<int>(s.size()) < dim + 1 || affine_dim(pts) != dim) continue;
      // g(x) = a . x + b with g = f on S.
      std::vector<std::vector<Rational>> rows;
      for (auto id : s) {
        std::vector<Rational> row(complex.point(id).begin(), complex.point(id).end());
        row.push_back(1);
        row.push_back(f.at(id));
        rows.push_back(row);
      }
      auto g = solve(rows, n + 1);
      if (!g) continue;
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) {
        if (mask >> i & 1) continue;
        const Point& p = complex.point(ids[i]);
        Rational v = (*g)[n];
        for (std::size_t j = 0; j < n; ++j) v += (*g)[j] * p[j];
        // Off S the function must stay strictly above the value. Within the
        // affine hull of the cell g is determined, so this is the fold test.
        ok = v > f.at(ids[i]);
      }
      if (ok) out.insert(s);
    }
  }
  return out;
}

inline std::set<VertexSet> maximal_cells(const polytri::PolyComplex& c) {
  std::set<VertexSet> out;
  for (auto m : c.maximal_cells()) out.insert(c.cell(m).vertices);
  return out;
}

/// Whether d+2 of the lifted points (p, f(p)) in the given cell are affinely
/// dependent, witnessed by a vanishing determinant.
inline bool has_degenerate_lift(const polytri::PolyComplex& complex, const VertexSet& cell,
                                const polytri::VerticialLifting& f) {
  std::vector<Point> pts;
  for (auto id : cell) pts.push_back(complex.point(id));
  const int d = affine_dim(pts);
  const std::size_t need = static_cast<std::size_t>(d) + 2;
  if (cell.size() < need) return false;
  // Lifted points in intrinsic coordinates: pick an affine basis of the cell.
  std::vector<std::size_t> basis;
  {
    std::vector<Point> chosen;
    for (std::size_t i = 0; i < pts.size() && basis.size() < static_cast<std::size_t>(d) + 1; ++i) {
      chosen.push_back(pts[i]);
      if (affine_dim(chosen) == static_cast<int>(chosen.size()) - 1) {
        basis.push_back(i);
      } else {
        chosen.pop_back();
      }
    }
  }
  for (std::size_t extra = 0; extra < pts.size(); ++extra) {
    if (std::find(basis.begin(), basis.end(), extra) != basis.end()) continue;
    std::vector<std::size_t> sel = basis;
    sel.push_back(extra);
    // Coordinates relative to the basis: barycentric weights of each point
    // give a (d+2)x(d+2) matrix [lambda | f | 1] whose determinant vanishes
    // exactly when the lifted points are dependent.
    std::vector<std::vector<Rational>> m;
    for (auto i : sel) {
      std::vector<std::vector<Rational>> rows;
      const std::size_t n = pts[i].size();
      for (std::size_t r = 0; r < n; ++r) {
        std::vector<Rational> row;
        for (auto b : basis) row.push_back(pts[b][r]);
        row.push_back(pts[i][r]);
        rows.push_back(row);
      }
      std::vector<Rational> ones(basis.size(), 1);
      ones.push_back(1);
      rows.push_back(ones);
      auto lambda = solve(rows, basis.size());
      std::vector<Rational> row(lambda->begin(), lambda->end());
      row.push_back(f.at(cell[i]));
      m.push_back(row);
    }
    if (determinant(m) == 0) return true;
  }
  return false;
}

}  // namespace oracle
