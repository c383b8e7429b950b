#ifndef JACOBSTHAL_ERRORS_HPP
#define JACOBSTHAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace jac {

// A request exceeds a configured table size or scan budget.
struct CapacityError : std::runtime_error {
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// An argument is outside the mathematical domain of an operation.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed textual input (radical specs, permutations, config files).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A certified comparison could not be decided and no exact fallback exists.
struct IndeterminateError : std::runtime_error {
  explicit IndeterminateError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace jac

#endif
