#pragma once

#include <stdexcept>
#include <string>

namespace qrev {

// Failure categories surfaced by the library. Each maps to one class of
// contract violation so callers (and the CLI) can react without parsing
// message text.
enum class ErrorKind {
  NotHermitian,
  NotPSD,
  ZeroMatrix,
  DimensionMismatch,
  InvalidRank,
  DegenerateDistribution,
  NotOvercomplete,
  NotAGramMatrix,
  InvalidResolution,
  InvalidState,
  SupportViolation,
  InvalidT,
  NotApplicable,
  NotOrthogonal,
  NotComplete,
  PreconditionFailed,
  HypothesisNotMet,
  SchemaError,
  ValidationError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qrev
