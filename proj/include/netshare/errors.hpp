#pragma once

#include <stdexcept>
#include <string>

namespace netshare {

/// Raised when an argument lies outside the domain of a model function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a scenario or configuration violates one of its invariants.
/// `field` names the offending parameter (dotted config key where possible).
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 protected:
  struct PreformattedTag {};
  ValidationError(std::string field, const std::string& message, PreformattedTag)
      : std::invalid_argument(message), field_(std::move(field)) {}

 private:
  std::string field_;
};

class NumericalError : public std::runtime_error {
 public:
  NumericalError(std::string component, const std::string& what, double error_estimate = 0.0)
      : std::runtime_error(component + ": " + what),
        component_(std::move(component)),
        error_estimate_(error_estimate) {}

  const std::string& component() const noexcept { return component_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  std::string component_;
  double error_estimate_;
};

}  // namespace netshare
