#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rcurves {

/// Raised when a caller passes arguments that violate an operation's preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the CSV / JSON readers. `line()` is 1-based and 0 when the
/// problem is not tied to a single line (e.g. weights not summing to one).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rcurves
