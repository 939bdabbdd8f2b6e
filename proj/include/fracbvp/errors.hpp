#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracbvp {

// Syntax error in expression text or a problem file. `offset` is the byte
// position of the offending token within the parsed string.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

// Runtime failure while evaluating an expression: ln of a nonpositive value,
// division by zero, fractional power of a nonpositive base.
class EvalError : public std::runtime_error {
public:
  EvalError(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " (operator at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

// Structural or semantic failure while reading a problem file. Line 0 marks
// whole-file problems (unreadable path) with no useful position.
class ProblemFileError : public std::runtime_error {
public:
  ProblemFileError(const std::string& message, std::size_t line)
      : std::runtime_error(
            line == 0 ? message
                      : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

// The linearized Galerkin matrix is singular to working precision. The message
// names the hypothesis whose failure this typically signals.
class SingularSystemError : public std::runtime_error {
public:
  explicit SingularSystemError(const std::string& message)
      : std::runtime_error(message) {}
};

}  // namespace fracbvp
