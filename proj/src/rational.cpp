#include "polytri/rational.hpp"

#include <cctype>

#include "polytri/error.hpp"

namespace polytri {

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!is_integer_text(num) || (slash != std::string_view::npos && !is_integer_text(den))) {
    throw Error(ErrorCode::ParseError, "not a rational: '" + std::string(text) + "'");
  }
  std::string n(num);
  if (n[0] == '+') n.erase(0, 1);
  Rational value;
  value.get_num() = Integer(n, 10);
  if (slash == std::string_view::npos) {
    value.get_den() = 1;
  } else {
    std::string d(den);
    if (d[0] == '+') d.erase(0, 1);
    value.get_den() = Integer(d, 10);
    if (value.get_den() == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  }
  value.canonicalize();
  return value;
}

std::string format_rational(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string format_point(const Point& point) {
  std::string out = "(";
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i) out += ",";
    out += format_rational(point[i]);
  }
  return out + ")";
}

bool PointLess::operator()(const Point& a, const Point& b) const {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

Point operator+(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Point operator-(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Point operator*(const Rational& s, const Point& p) {
  Point r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = s * p[i];
  return r;
}

Rational dot(const Point& a, const Point& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer lcm_of_denominators(const std::vector<Rational>& values) {
  Integer l = 1;
  for (const auto& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::NotIntersectionClosed: return "NotIntersectionClosed";
    case ErrorCode::RedundantVertex: return "RedundantVertex";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::NotComplete: return "NotComplete";
    case ErrorCode::CellNotContained: return "CellNotContained";
    case ErrorCode::NotSubcomplex: return "NotSubcomplex";
    case ErrorCode::NotConvexDown: return "NotConvexDown";
    case ErrorCode::UnattainableValue: return "UnattainableValue";
    case ErrorCode::RestrictionMismatch: return "RestrictionMismatch";
    case ErrorCode::InputNotInduced: return "InputNotInduced";
    case ErrorCode::InputNotSimplicial: return "InputNotSimplicial";
    case ErrorCode::GenericityExhausted: return "GenericityExhausted";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotSimplicial: return "NotSimplicial";
    case ErrorCode::NotSlicing: return "NotSlicing";
    case ErrorCode::NoSlicingFunction: return "NoSlicingFunction";
    case ErrorCode::NotPointed: return "NotPointed";
    case ErrorCode::InvalidMorphism: return "InvalidMorphism";
    case ErrorCode::NonPositiveMultiplier: return "NonPositiveMultiplier";
    case ErrorCode::IncompatibleSubdivision: return "IncompatibleSubdivision";
    case ErrorCode::BoundaryNotIndexOne: return "BoundaryNotIndexOne";
    case ErrorCode::BoundaryNotInduced: return "BoundaryNotInduced";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
  }
  return "Unknown";
}

}  // namespace polytri
