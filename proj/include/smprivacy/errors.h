// SPDX-License-Identifier: Apache-2.0
#ifndef SMPRIVACY_ERRORS_H_
#define SMPRIVACY_ERRORS_H_

#include <stdexcept>
#include <string>

namespace smprivacy {

// A parameter lies outside its alphabet or a structural precondition fails.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An enumeration or support would exceed its configured cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested block length admits no block policy for this configuration.
class PolicyInfeasibleError : public DomainError {
 public:
  using DomainError::DomainError;
};

class UnsupportedConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

// An internal guarantee did not hold. Reaching this is a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace smprivacy

#endif  // SMPRIVACY_ERRORS_H_
