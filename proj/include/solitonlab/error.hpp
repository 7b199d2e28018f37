#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace solitonlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A jet or expression was evaluated outside the real domain of a function,
/// or a division by a near-zero value was attempted.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The manifold definition is malformed or violates an invariant
/// (asymmetric/degenerate metric, missing structure fields, ...).
class ManifoldError : public Error {
 public:
  using Error::Error;
};

/// Syntax or resolution error in an expression or a manifold file.
class ParseError : public Error {
 public:
  /// `message` already names the location (e.g. file:line:col) when
  /// `annotate` is false; otherwise the offset is appended.
  ParseError(const std::string& message, std::size_t offset, bool annotate = true)
      : Error(annotate ? message + " (at offset " + std::to_string(offset) + ")" : message),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace solitonlab
