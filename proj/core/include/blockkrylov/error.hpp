#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blockkrylov {

/// Violated precondition: dimension mismatch, bad index, out-of-range argument.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input that is well-formed but unusable, e.g. a zero right-hand side block.
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed Matrix Market or partition input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Zero diagonal in a triangular solve.
class SingularTriangularError : public std::runtime_error {
 public:
  explicit SingularTriangularError(std::size_t index)
      : std::runtime_error("zero diagonal entry at index " + std::to_string(index)),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Failure while factorizing preconditioner blocks or building an experiment.
class SetupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace blockkrylov
