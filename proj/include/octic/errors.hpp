#pragma once

#include <stdexcept>
#include <string>

namespace octic {

// Every failure raised by the library derives from Error so callers (the CLI,
// the Python module) can report it with a stage label and keep going.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched rings, unknown variables, zero polynomials where forbidden.
class DomainError : public Error {
 public:
  using Error::Error;
};

// exact_divide_by_var_power on a polynomial with a term of too low order.
class DivisibilityError : public Error {
 public:
  using Error::Error;
};

// Division by zero in a field.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

// Repeated branch points, lambda in {0,1}, non-squarefree quartics,
// coincident planes at a special parameter.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

// Skew or equal lines where a spanning plane is requested, planes that do not
// contain a pencil's axis.
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Inputs a routine deliberately does not handle (irrational branch points over
// Q, non complete-intersection charts, unsupported blow-up centres).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Malformed counting tasks and oracle refusals.
class TaskError : public Error {
 public:
  using Error::Error;
};

// Numbers that contradict a theorem (Weil bound) or each other.
class DataError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// A pipeline stage failed; the message carries the stage label.
class StageError : public Error {
 public:
  StageError(const std::string& stage, const std::string& what) : Error(stage + ": " + what), stage_(stage) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace octic
