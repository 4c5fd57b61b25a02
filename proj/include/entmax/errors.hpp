#pragma once

#include <stdexcept>
#include <string>

namespace entmax {

// Raised when an argument lies outside the mathematical domain of an
// operation (negative mass, r_mod < 2, the zero polynomial, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Raised when operands are individually valid but cannot be combined,
// e.g. sequences carried by different arithmetic backends.
class ConfigurationError : public std::invalid_argument {
 public:
  explicit ConfigurationError(const std::string& what)
      : std::invalid_argument(what) {}
};

}  // namespace entmax
