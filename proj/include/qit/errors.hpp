#pragma once

#include <stdexcept>

namespace qit {

/// Shapes or dimensions that do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Values outside the domain of an operation (non-Hermitian input, bad probabilities, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed text or JSON input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qit
