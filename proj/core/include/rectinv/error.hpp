#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rectinv {

enum class ErrorCode {
  InvalidArgument,
  DomainError,
  UnsupportedMap,
  NonFiniteIntegrand,
  TailDivergence,
  OutOfDomain,
  NoStrip,
  NoClosedForm,
  PoleHit,
  UnknownBoundary,
  NotRectangularizable,
  SidePoleConflict,
  ZInsideRectangle,
  ParseError,
  EmptyGrid,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can map them without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t column, const std::string& what)
      : Error(ErrorCode::ParseError, "column " + std::to_string(column) + ": " + what),
        column_(column) {}

  // 1-based column of the offending character.
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

}  // namespace rectinv
