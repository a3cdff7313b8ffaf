#pragma once

#include <stdexcept>
#include <string>

namespace bodycenters {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The kernel or body lacks a property the operation requires
/// (e.g. a C0-only kernel passed to a derivative evaluator).
class CapabilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Evaluation point violates a stated precondition (typically: on the boundary).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed body or kernel description.
class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computed object violates an invariant that should hold by construction.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bodycenters
