#include "polytri/lp.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

namespace polytri::lp {

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * (cols + 1)) {}
  Rational& at(std::size_t r, std::size_t c) { return cells_[r * (cols_ + 1) + c]; }
  Rational& rhs(std::size_t r) { return cells_[r * (cols_ + 1) + cols_]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> cells_;
};

}  // namespace

Result solve(const System& system) {
  const std::size_t m = system.constraints.size();
  const std::size_t n = system.variables;
  Result result;
  if (m == 0) {
    result.solution = Point(n);
    return result;
  }
  std::vector<std::size_t> slack_col(m, 0);
  std::size_t cols = 2 * n;
  for (std::size_t i = 0; i < m; ++i) {
    if (system.constraints[i].relation == Relation::GreaterEqual) slack_col[i] = cols++;
  }
  const std::size_t first_artificial = cols;
  cols += m;

  Tableau t(m, cols);
  std::vector<int> sign(m, 1);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = system.constraints[i];
    if (sgn(c.rhs) < 0) sign[i] = -1;
    for (std::size_t j = 0; j < n; ++j) {
      t.at(i, j) = sign[i] * c.coefficients[j];
      t.at(i, n + j) = -sign[i] * c.coefficients[j];
    }
    if (c.relation == Relation::GreaterEqual) t.at(i, slack_col[i]) = -sign[i];
    t.at(i, first_artificial + i) = 1;
    t.rhs(i) = sign[i] * c.rhs;
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = first_artificial + i;

  std::vector<Rational> cost(cols, 0);
  for (std::size_t j = first_artificial; j < cols; ++j) cost[j] = 1;
  std::vector<Rational> reduced(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    Rational r = cost[j];
    for (std::size_t i = 0; i < m; ++i) r -= t.at(i, j);
    reduced[j] = r;
  }
  Rational objective = 0;
  for (std::size_t i = 0; i < m; ++i) objective += t.rhs(i);

  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (sgn(reduced[j]) < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(t.at(i, enter)) <= 0) continue;
      Rational ratio = t.rhs(i) / t.at(i, enter);
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    // Phase one is bounded below by zero, so a ratio always exists.
    assert(leave != m);
    const Rational piv = t.at(leave, enter);
    for (std::size_t j = 0; j < cols; ++j) t.at(leave, j) /= piv;
    t.rhs(leave) /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave) continue;
      const Rational f = t.at(i, enter);
      if (sgn(f) == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (sgn(t.at(leave, j)) != 0) t.at(i, j) -= f * t.at(leave, j);
      }
      t.rhs(i) -= f * t.rhs(leave);
    }
    const Rational fr = reduced[enter];
    for (std::size_t j = 0; j < cols; ++j) {
      if (sgn(t.at(leave, j)) != 0) reduced[j] -= fr * t.at(leave, j);
    }
    objective += fr * t.rhs(leave);
    basis[leave] = enter;
  }

  if (sgn(objective) == 0) {
    Point x(n);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t b = basis[i];
      if (b < n) {
        x[b] += t.rhs(i);
      } else if (b < 2 * n) {
        x[b - n] -= t.rhs(i);
      }
    }
    assert(satisfies(system, x));
    result.solution = std::move(x);
    return result;
  }
  std::vector<Rational> z(m);
  for (std::size_t i = 0; i < m; ++i) z[i] = sign[i] * (1 - reduced[first_artificial + i]);
  assert(verify_farkas(system, z));
  result.farkas = std::move(z);
  return result;
}

bool satisfies(const System& system, const Point& x) {
  for (const auto& c : system.constraints) {
    const Rational lhs = dot(c.coefficients, x);
    if (c.relation == Relation::Equal ? lhs != c.rhs : lhs < c.rhs) return false;
  }
  return true;
}

bool verify_farkas(const System& system, const std::vector<Rational>& z) {
  if (z.size() != system.constraints.size()) return false;
  Point combo(system.variables);
  Rational rhs = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const auto& c = system.constraints[i];
    if (c.relation == Relation::GreaterEqual && sgn(z[i]) < 0) return false;
    for (std::size_t j = 0; j < system.variables; ++j) combo[j] += z[i] * c.coefficients[j];
    rhs += z[i] * c.rhs;
  }
  return std::all_of(combo.begin(), combo.end(), [](const Rational& v) { return sgn(v) == 0; }) && sgn(rhs) > 0;
}

bool feasible_fourier_motzkin(const System& system) {
  // Rows a.x >= b stored as (a, b).
  std::vector<std::pair<Point, Rational>> rows;
  for (const auto& c : system.constraints) {
    rows.emplace_back(c.coefficients, c.rhs);
    if (c.relation == Relation::Equal) {
      Point neg = c.coefficients;
      for (auto& v : neg) v = -v;
      rows.emplace_back(std::move(neg), -c.rhs);
    }
  }
  auto normalize = [](std::pair<Point, Rational>& row) {
    Rational scale = 0;
    for (const auto& v : row.first) {
      if (sgn(v) != 0) {
        scale = abs(v);
        break;
      }
    }
    if (sgn(scale) == 0) return;
    for (auto& v : row.first) v /= scale;
    row.second /= scale;
  };
  for (std::size_t var = 0; var < system.variables; ++var) {
    std::vector<std::pair<Point, Rational>> pos, neg, keep;
    for (auto& r : rows) {
      const int s = sgn(r.first[var]);
      (s > 0 ? pos : s < 0 ? neg : keep).push_back(std::move(r));
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        const Rational a = p.first[var];
        const Rational b = -q.first[var];
        std::pair<Point, Rational> combo{Point(system.variables), b * p.second + a * q.second};
        for (std::size_t j = 0; j < system.variables; ++j) combo.first[j] = b * p.first[j] + a * q.first[j];
        combo.first[var] = 0;
        keep.push_back(std::move(combo));
      }
    }
    std::set<std::pair<Point, Rational>, bool (*)(const std::pair<Point, Rational>&, const std::pair<Point, Rational>&)>
        unique([](const auto& x, const auto& y) {
          if (PointLess{}(x.first, y.first)) return true;
          if (PointLess{}(y.first, x.first)) return false;
          return x.second < y.second;
        });
    for (auto& r : keep) {
      normalize(r);
      unique.insert(std::move(r));
    }
    rows.assign(unique.begin(), unique.end());
  }
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return sgn(r.second) <= 0; });
}

}  // namespace polytri::lp
