#pragma once

#include <stdexcept>
#include <string>

namespace phonon {

/// Input rejected by a precondition (malformed table, non-normalized velocity, bad config field).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Point or parameter outside the domain of a chart, cavity or stencil.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Equation of state gives dp/drho > 1 at the background point.
class SuperluminalSoundError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Adaptive quadrature ran out of panels before reaching the requested tolerance.
class ToleranceError : public std::runtime_error {
 public:
  ToleranceError(const std::string& what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}

  double estimate() const noexcept { return estimate_; }
  double error() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

}  // namespace phonon
