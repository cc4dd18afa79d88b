#pragma once

#include <stdexcept>
#include <string>

namespace phasedet {

// Precondition violated by the caller's arguments (bad polynomial, non-coprime
// lengths, out-of-range probability, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Request is well formed but exceeds a configured enumeration or memory budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace phasedet
