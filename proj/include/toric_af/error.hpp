#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toric_af {

enum class ErrorKind {
  DomainError,
  ParseError,
  InvalidField,
  NonRealState,
  MixedContext,
  DivisionByZero,
  InexactInput,
  InexactState,
  NotUnimodular,
  LeftCone,
  RankMismatch,
  Cancelled,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. The kind is stable and drives the
/// CLI exit-code mapping; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace toric_af
