#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace varred {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression or input file. `position` is a 0-based byte offset
/// into the offending text (or npos when not applicable).
class ParseError : public Error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  ParseError(const std::string& what, std::size_t position = npos)
      : Error(position == npos ? what : what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An operation was called on data violating its documented precondition
/// (dimension mismatch, non-nilpotent operator, dependent basis, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The input is valid but lies outside the regime the engine handles
/// (diagonal algebra of dimension > 1, eigenvalues outside Q, ...).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace varred
