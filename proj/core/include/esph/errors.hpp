#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace esph {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: dimension mismatches, too few points, affinely
// degenerate input.
class InputError : public Error {
 public:
  using Error::Error;
};

// A sign predicate evaluated to exactly zero where genericity forbids it.
// `ids` names the offending vertex tuple when one is known.
class GenericityViolation : public Error {
 public:
  explicit GenericityViolation(const std::string& what, std::vector<int> ids = {})
      : Error(what), ids_(std::move(ids)) {}

  const std::vector<int>& ids() const noexcept { return ids_; }

 private:
  std::vector<int> ids_;
};

// Some input point is strictly inside the hull of the others.
class NotInConvexPosition : public Error {
 public:
  explicit NotInConvexPosition(const std::string& what, int point = -1)
      : Error(what), point_(point) {}

  int point() const noexcept { return point_; }

 private:
  int point_;
};

// Malformed point file; `line` is 1-based.
class ParseError : public InputError {
 public:
  ParseError(int line, const std::string& detail)
      : InputError("parse error: line " + std::to_string(line) + (detail.empty() ? "" : ": " + detail)),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

// Simplex points are affinely dependent.
class DegenerateSimplex : public InputError {
 public:
  using InputError::InputError;
};

// A face is shared by three or more simplices.
class MalformedTriangulation : public Error {
 public:
  using Error::Error;
};

// Requested shelling target has no envelope witness.
class NotABMEar : public Error {
 public:
  using Error::Error;
};

// Invariant that cannot fail on valid data; signals a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace esph
