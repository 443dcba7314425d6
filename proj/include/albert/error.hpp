#pragma once

#include <stdexcept>
#include <string>

namespace albert {

/// Caller violated an interface contract: mismatched fields, wrong space tag,
/// malformed literal, dimension mismatch.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operation is undefined at the given argument (inverse of zero, singular map).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An internal consistency check failed. Always a bug or a broken tower.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// No isotopy witness exists for the requested pair of twisting elements.
class NoWitnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace albert
