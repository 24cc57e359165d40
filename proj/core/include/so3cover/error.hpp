#pragma once

#include <stdexcept>
#include <string>

namespace so3cover {

/// Base class for every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller supplied an argument outside the documented domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Geometric degeneracy the caller may resolve by perturbing its input.
class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to produce a result (bracketing, branch selection).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; carries the 1-based line number of the offending line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace so3cover
