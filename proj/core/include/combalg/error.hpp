#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace combalg {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// A term or algebra uses an operation the active signature does not provide.
class SignatureError : public Error {
 public:
  using Error::Error;
};

// A search or enumeration would exceed its configured budget. Distinct from
// any positive or negative verdict.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Exact arithmetic would produce a value beyond the configured bit cap.
class EvalOverflow : public Error {
 public:
  using Error::Error;
};

// Raised when a construction's internal consistency check fails; indicates a
// bug or a violated mathematical assumption, never bad user input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace combalg
