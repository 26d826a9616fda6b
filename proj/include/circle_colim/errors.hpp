#pragma once

#include <stdexcept>
#include <string>

namespace circle_colim {

/// Bad input: malformed data or a violated precondition. The CLI maps this
/// to exit code 1.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical check failed on well-formed input (reconstruction,
/// commutation, cocycle identity, ...). The CLI maps this to exit code 2.
class ContractViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace circle_colim
