#pragma once

#include <stdexcept>
#include <string>

namespace psring {

/// Argument outside the domain of a function (r <= 0, k >= 1, invalid bracket, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A numerical procedure failed to deliver a result (non-convergence, NaN, no sign change).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Non-finite function value encountered at a specific abscissa.
class NonFiniteValue : public NumericalError {
public:
  NonFiniteValue(const std::string& where, double abscissa)
      : NumericalError(where + ": non-finite value at x = " + std::to_string(abscissa)),
        abscissa_(abscissa) {}

  double abscissa() const noexcept { return abscissa_; }

private:
  double abscissa_;
};

}  // namespace psring
