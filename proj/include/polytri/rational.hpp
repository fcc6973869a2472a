#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace polytri {

using Rational = mpq_class;
using Integer = mpz_class;

/// A point of an ambient chart. Coordinates are exact rationals.
using Point = std::vector<Rational>;

/// Parses "p/q", "p" or "-p/q". Throws polytri::Error(ParseError) on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise (q > 0, gcd 1).
std::string format_rational(const Rational& value);

std::string format_point(const Point& point);

inline std::strong_ordering compare(const Rational& a, const Rational& b) {
  const int c = cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

/// Lexicographic comparison of points of equal dimension.
struct PointLess {
  bool operator()(const Point& a, const Point& b) const;
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(const Rational& s, const Point& p);
Rational dot(const Point& a, const Point& b);

Integer lcm_of_denominators(const std::vector<Rational>& values);

}  // namespace polytri
