#pragma once

#include <stdexcept>
#include <string>

namespace valx {

// Base of every domain-level failure (CLI exit status 1).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mismatched descriptors, malformed cuts, ranks out of range.
struct StructuralError : DomainError {
  using DomainError::DomainError;
};

// A constructor or operation was called outside the regime where the
// result applies. The message names the violated condition.
struct PreconditionError : DomainError {
  using DomainError::DomainError;
};

struct DivisionByZero : DomainError {
  DivisionByZero() : DomainError("division by zero") {}
};

struct PoleError : DomainError {
  using DomainError::DomainError;
};

// Exact query on a sequence without a certified pseudo-limit.
struct UncertifiedError : DomainError {
  using DomainError::DomainError;
};

// Parse failure with a 1-based position (CLI exit status 2).
struct SyntaxError : std::runtime_error {
  SyntaxError(const std::string& msg, int line, int column)
      : std::runtime_error(msg + " at " + std::to_string(line) + ":" +
                           std::to_string(column)),
        line(line),
        column(column) {}
  int line;
  int column;
};

}  // namespace valx
