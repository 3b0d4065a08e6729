#pragma once

#include <stdexcept>
#include <string>

namespace affchar {

// Malformed user input: unknown type label, unparsable number, bad word.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A value outside the domain an operation is defined on: critical level,
// evaluation point outside Y, imaginary root where a real one is needed.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A documented precondition was violated by an otherwise well-formed call.
struct PreconditionError : std::logic_error {
  using std::logic_error::logic_error;
};

// An enumeration cutoff was too small to certify the result.
struct CutoffError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An internal invariant failed; indicates a bug or an unfaithful window.
struct ConsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace affchar
