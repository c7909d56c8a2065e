/**
 * @file errors.hpp
 * @brief Error taxonomy shared across the library.
 *
 * The CLI maps these to exit codes: configuration/contract errors -> 2,
 * resource limits and timeouts -> 3, infeasible encodings -> 4.
 */

#ifndef MOCA_ERRORS_HPP
#define MOCA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace moca {

/// A caller violated a documented precondition or invariant.
class ContractError : public std::logic_error {
 public:
  explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

/// Incompatible setup, e.g. an oracle paired with the wrong problem class.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured size limit was exceeded (DP table, city cap, grid budget).
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// A run exceeded its wall-clock budget.
class TimeoutError : public ResourceError {
 public:
  explicit TimeoutError(const std::string& what) : ResourceError(what) {}
};

/// A solution encoding violates a feasibility constraint of its instance.
class FeasibilityError : public std::runtime_error {
 public:
  explicit FeasibilityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace moca

#endif  // MOCA_ERRORS_HPP
