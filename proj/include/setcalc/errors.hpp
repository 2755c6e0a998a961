#pragma once

#include <stdexcept>
#include <string>

namespace setcalc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A shape combination for which no exact algorithm is implemented
/// (e.g. excess from a hulled set to a union of several convex pieces).
class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

/// Raised when a mathematically guaranteed property is violated numerically.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

// Problem-file errors. `where` is a JSON pointer or "line:col".
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

class SyntaxError : public ParseError {
 public:
  using ParseError::ParseError;
};

class SchemaError : public ParseError {
 public:
  using ParseError::ParseError;
};

class UnknownNodeKind : public ParseError {
 public:
  using ParseError::ParseError;
};

class DanglingReference : public ParseError {
 public:
  using ParseError::ParseError;
};

class FileDimensionMismatch : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace setcalc
