#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mtea {

/// A precondition of a library call was not met by the caller.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or infeasible instance text. `line()` is 1-based, 0 when the
/// problem is not tied to a single line (e.g. a missing section).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mtea
