#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polytri {

enum class ErrorCode {
  ParseError,
  DimensionMismatch,
  DomainMismatch,
  NotIntersectionClosed,
  RedundantVertex,
  DegenerateInput,
  NotPure,
  NotComplete,
  CellNotContained,
  NotSubcomplex,
  NotConvexDown,
  UnattainableValue,
  RestrictionMismatch,
  InputNotInduced,
  InputNotSimplicial,
  GenericityExhausted,
  TooLarge,
  NotSimplicial,
  NotSlicing,
  NoSlicingFunction,
  NotPointed,
  InvalidMorphism,
  NonPositiveMultiplier,
  IncompatibleSubdivision,
  BoundaryNotIndexOne,
  BoundaryNotInduced,
  SearchExhausted,
  UnsupportedDimension,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `code` identifies the condition; the
/// message carries a human-readable witness where one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace polytri
