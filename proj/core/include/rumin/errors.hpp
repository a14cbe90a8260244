#pragma once

#include <stdexcept>
#include <string>

namespace rumin {

/// Bad argument: dimension mismatch, non-positive scale, wrong grade, ...
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation produced a state that the mathematics says is impossible.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A low-degree class was paired against a tangent that does not annihilate I^k.
class AdmissibilityError : public std::runtime_error {
 public:
  AdmissibilityError(std::size_t simplex, const std::string& what)
      : std::runtime_error(what), simplex_(simplex) {}
  std::size_t simplex() const noexcept { return simplex_; }

 private:
  std::size_t simplex_;
};

/// Slicing level coincides with the value of f at a vertex.
class DegenerateLevelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Request falls in the middle dimension k = n, which the slicing theory leaves open.
class ScopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

class ChainFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rumin
