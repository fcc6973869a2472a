#pragma once

#include <optional>

#include "doctest.h"
#include "polytri/error.hpp"

namespace doctest {
template <>
struct StringMaker<polytri::ErrorCode> {
  static String convert(polytri::ErrorCode c) { return String(std::string(polytri::to_string(c)).c_str()); }
};
template <>
struct StringMaker<std::optional<polytri::ErrorCode>> {
  static String convert(const std::optional<polytri::ErrorCode>& c) {
    return c ? StringMaker<polytri::ErrorCode>::convert(*c) : String("no error");
  }
};
}  // namespace doctest

/// Code of the polytri::Error thrown by f, nullopt if it returns normally.
template <class F>
std::optional<polytri::ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const polytri::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

#define CHECK_ERROR(expr, expected) CHECK(error_of([&] { (void)(expr); }) == std::optional(expected))
