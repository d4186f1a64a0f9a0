#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace msym {

// Wrong sizes, out-of-range indices, malformed arguments.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input lacks the symmetry an operation requires.
class SymmetryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Thrown by the Cholesky engine. Carries the number of oracle evaluations
// spent before the failure (zero for the dense variant).
class FactorizationError : public std::runtime_error {
 public:
  FactorizationError(const std::string& what, std::uint64_t evals = 0)
      : std::runtime_error(what), evals_(evals) {}
  std::uint64_t evals() const noexcept { return evals_; }

 private:
  std::uint64_t evals_;
};

class NotPositiveSemidefinite : public FactorizationError {
 public:
  using FactorizationError::FactorizationError;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace msym
