#pragma once

#include <stdexcept>
#include <string>

namespace nds {

// Base class for all toolkit errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mathematically invalid input: point outside the space, breakpoints out of
// order, map image escaping [0,1], measure mass != 1, and so on.
struct DomainError : Error {
  using Error::Error;
};

// Caller misuse that is not a domain violation: grid coarser than epsilon,
// unsupported operation for a schedule kind, horizon of zero, ...
struct UsageError : Error {
  using Error::Error;
};

// Raised when an operation would exceed its interval-cell budget.
struct BudgetError : Error {
  using Error::Error;
};

// Configuration file problems (CLI layer).  Maps to exit code 2.
struct ConfigError : Error {
  using Error::Error;
};

// A --verify run found a computed value violating a declared expectation.
// Maps to exit code 4.
struct VerifyError : Error {
  using Error::Error;
};

}  // namespace nds
