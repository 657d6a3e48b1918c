#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace baire {

enum class ErrorKind {
  InvalidArgument,
  WriteOnceViolation,
  IdentityViolation,
  NotSquareForm,
  EvaluationBlocked,
  GroupAxiomViolation,
  LimitExceeded,
  IdentityElement,
  TrivialGroup,
  NotInClosure,
  UnknownConstant,
  LengthMismatch,
  ParseError,
  IllegalMove,
  StrategyFault,
  NotYourTurn,
  SessionNotFound,
  Overflow,
  GoalBlocked,
};

std::string_view to_string(ErrorKind kind);

/// Base of every exception thrown by the library. The kind is stable and
/// machine-readable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace baire
