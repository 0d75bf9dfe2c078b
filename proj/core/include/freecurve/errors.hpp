#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace freecurve {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or non-homogeneous polynomial input. `position` is a 0-based
/// character offset into the parsed text.
class ParseError : public Error {
 public:
  enum class Kind { Syntax, NonHomogeneous };

  ParseError(Kind kind, std::size_t position, const std::string& message)
      : Error(message), kind_(kind), position_(position) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t position() const noexcept { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

/// Input that parses but violates a structural requirement, e.g. a singular
/// conic passed as an arrangement component.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Hilbert function of the Milnor algebra did not stabilize on its window.
class UnstableError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// Singularity type outside the log canonical threshold table.
class UnsupportedTypeError : public Error {
 public:
  using Error::Error;
};

}  // namespace freecurve
