#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace subcount {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Argument outside the documented domain (s <= 0, p outside (0,1], ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Input violates an operation's precondition (e.g. nu is not an embedding).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Requested strategy is not available for this input size.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// Exact count left the representable range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Moment of the degree distribution of an empty graph.
class UndefinedMomentError : public Error {
 public:
  using Error::Error;
};

}  // namespace subcount
