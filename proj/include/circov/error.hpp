#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace circov {

enum class ErrorKind {
  BoundViolation,
  DuplicateRow,
  IndexOutOfRange,
  EmptyColumnSet,
  NotInterval,
  NotClosed,
  LimitExceeded,
  NotInQ,
  NonpositiveWinding,
  Redundant,
  BadParameters,
  NotCirculantMinor,
  ReverseRowArcPresent,
  NoEssentialBullets,
  NegativeWeight,
  BudgetExceeded,
  NegativeCoefficient,
  InvalidInequality,
  IterationCap,
  Parse,
  InvalidArgument,
  Internal,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::BoundViolation: return "BoundViolation";
    case ErrorKind::DuplicateRow: return "DuplicateRow";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::EmptyColumnSet: return "EmptyColumnSet";
    case ErrorKind::NotInterval: return "NotInterval";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::LimitExceeded: return "LimitExceeded";
    case ErrorKind::NotInQ: return "NotInQ";
    case ErrorKind::NonpositiveWinding: return "NonpositiveWinding";
    case ErrorKind::Redundant: return "Redundant";
    case ErrorKind::BadParameters: return "BadParameters";
    case ErrorKind::NotCirculantMinor: return "NotCirculantMinor";
    case ErrorKind::ReverseRowArcPresent: return "ReverseRowArcPresent";
    case ErrorKind::NoEssentialBullets: return "NoEssentialBullets";
    case ErrorKind::NegativeWeight: return "NegativeWeight";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NegativeCoefficient: return "NegativeCoefficient";
    case ErrorKind::InvalidInequality: return "InvalidInequality";
    case ErrorKind::IterationCap: return "IterationCap";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

// Every failure raised by the library. `index` carries the offending row,
// column or arc when the error has one (e.g. the violated row of NotInQ).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), index_(index) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what,
                              std::optional<std::size_t> index = std::nullopt) {
  throw Error(kind, what, index);
}

// Internal invariant check, active in every build type.
inline void ensure(bool condition, const char* what) {
  if (!condition) fail(ErrorKind::Internal, what);
}

}  // namespace circov
