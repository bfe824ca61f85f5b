#pragma once

#include <stdexcept>
#include <string>

namespace starprod {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidScheme : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class UnknownScheme : public Error {
 public:
  explicit UnknownScheme(const std::string& name) : Error("unknown scheme: " + name) {}
};

/// Structure constants that the normal-form reduction cannot bring to a labelled class.
class Unclassifiable : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

class NonDecaying : public Error {
 public:
  using Error::Error;
};

class SingularFrame : public Error {
 public:
  using Error::Error;
};

/// Malformed input document; line is 1-based, or 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line) : Error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A K matrix with a nonzero entry where the deformation route requires zero.
class ShapeViolation : public Error {
 public:
  ShapeViolation(int row, int col, const std::string& what)
      : Error(what), row_(row), col_(col) {}
  int row() const { return row_; }
  int col() const { return col_; }

 private:
  int row_;
  int col_;
};

}  // namespace starprod
