#pragma once

#include <any>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace gradedsim {

// Base class of everything this library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed document text; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(message), line(line), column(column) {}
  std::size_t line;
  std::size_t column;
};

// Syntactically fine but inconsistent content (unknown state, duplicate
// transition, mass above one, ...). Messages name the offending element.
class SemanticError : public Error {
 public:
  using Error::Error;
};

// Mismatched carriers or grade domains between arguments.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A grade outside its domain (e.g. 3/2 in Nat, 2 in UnitInterval).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An operation-specific precondition failed (non-monoidal matrix, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An enumeration guard or generator cap was exceeded.
class SizeError : public Error {
 public:
  using Error::Error;
};

// An iteration cap fired with on_cap = error. Carries the last iterate
// (a MinGradeMatrix or Pseudometric, depending on the engine).
class FixpointCapError : public Error {
 public:
  FixpointCapError(const std::string& message, std::any last,
                   std::size_t iterations)
      : Error(message), last_iterate(std::move(last)), iterations(iterations) {}
  std::any last_iterate;
  std::size_t iterations;
};

}  // namespace gradedsim
