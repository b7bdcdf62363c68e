#pragma once

#include <stdexcept>
#include <string>

namespace bbring {

/// Arithmetic outside an operation's domain (inverting zero, a singular matrix, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// API misuse: bad parameters, cross-session handles, non-central scalars.
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A randomized step ran out of its retry budget.
class RecoveryError : public std::runtime_error {
public:
  RecoveryError(std::string step, const std::string &what)
      : std::runtime_error(step + ": " + what), step_(std::move(step)) {}

  const std::string &step() const noexcept { return step_; }

private:
  std::string step_;
};

} // namespace bbring
