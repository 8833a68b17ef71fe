#pragma once

#include <stdexcept>
#include <string>

namespace twotier {

// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid scenario, config file or option values.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Internally inconsistent data, e.g. a partition referencing a missing AP.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Operation requires limited-range budgets that the scenario lacks.
class ModeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Caller misuse of an API (bad index pairs, unknown names).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace twotier
