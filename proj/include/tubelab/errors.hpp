// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace tubelab {

// Shape or size mismatch between arguments.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input outside the region where an operation is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A documented precondition of the caller was violated.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Ill-conditioned or non-converging numerics.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double condition = 0.0)
      : std::runtime_error(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

// Resource guard (mode counts, memory).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Invalid experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require_dims(bool ok, const std::string& what);

}  // namespace tubelab
