#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fsvd {

// Base of every error the library throws. The CLI maps each subclass to a
// distinct exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied arguments that violate a precondition (shapes, ranges, ids).
class InputError : public Error {
 public:
  using Error::Error;
};

// Malformed file contents. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : what + " (line " + std::to_string(line) + ")"), line_(line) {}
  explicit ParseError(const std::string& what) : ParseError(what, 0) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Non-finite values or a numerically degenerate problem.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Every singular value fell below the pseudoinverse drop tolerance.
class DegenerateInputError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace fsvd
