#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "polytri/rational.hpp"

namespace polytri::lp {

enum class Relation { Equal, GreaterEqual };

struct Constraint {
  Point coefficients;
  Relation relation = Relation::GreaterEqual;
  Rational rhs;
};

/// A system of linear constraints over free rational variables.
struct System {
  std::size_t variables = 0;
  std::vector<Constraint> constraints;

  void add(Point coefficients, Relation relation, Rational rhs) {
    constraints.push_back({std::move(coefficients), relation, std::move(rhs)});
  }
};

/// Outcome of a feasibility query. Exactly one of `solution` / `farkas` is set.
///
/// A Farkas certificate z satisfies  sum_i z_i a_i = 0,  sum_i z_i b_i > 0,
/// and z_i >= 0 on inequality rows, which rules out every x.
struct Result {
  std::optional<Point> solution;
  std::optional<std::vector<Rational>> farkas;

  bool feasible() const { return solution.has_value(); }
};

/// Exact two-phase simplex (phase one only) with Bland's rule.
Result solve(const System& system);

bool satisfies(const System& system, const Point& x);
bool verify_farkas(const System& system, const std::vector<Rational>& z);

/// Fourier-Motzkin elimination. Exponential; meant for small systems used to
/// cross-check the simplex answer.
bool feasible_fourier_motzkin(const System& system);

}  // namespace polytri::lp
