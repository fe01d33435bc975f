#pragma once

#include <stdexcept>
#include <string>

namespace curenet {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument is outside the domain of the operation (bad node id,
/// checkpoint out of range, non-unit weight where unit weights are required).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive oracle was asked to enumerate more than its size limit.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A crusade, tree or plan is malformed.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// A caller broke an operation's precondition on an intermediate artifact.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver failed to reach its tolerances.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A runtime guarantee (drift bound, width bound, fairness) was observed false.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Simulation reached a state with infected nodes but no possible transition.
class StalledState : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace curenet
