#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <span>

#include "psring/errors.hpp"

namespace psring {

using Integrand = std::function<double(double)>;

struct QuadratureTolerance {
  double rel = 1e-12;
  double abs = 1e-14;
};

/// One-dimensional definite integral. `upper` may be +infinity.
struct Integral {
  Integrand integrand;
  double lower = 0.0;
  double upper = 0.0;
  QuadratureTolerance tol{};
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  // Set when the requested tolerance was below what double rounding of the
  // integrand allows (error floor 50 eps int|f|); value is then as good as the
  // arithmetic permits and error_estimate reports that floor.
  bool roundoff_limited = false;
};

/// Thrown when the subdivision budget is exhausted; carries the best estimate.
class QuadratureError : public NumericalError {
public:
  QuadratureError(const std::string& what, QuadratureResult best)
      : NumericalError(what), best_(best) {}
  const QuadratureResult& best_estimate() const noexcept { return best_; }

private:
  QuadratureResult best_;
};

inline constexpr std::size_t kDefaultSubdivisionBudget = 4000;

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on a finite interval.
/// The integrand is never evaluated at the endpoints, so removable endpoint
/// singularities only need a finite one-sided limit. Deterministic: the
/// subdivision sequence depends only on the integrand values.
QuadratureResult integrate(const Integrand& f, double lower, double upper,
                           QuadratureTolerance tol = {},
                           std::size_t max_subdivisions = kDefaultSubdivisionBudget);

/// Dispatches to integrate_semi_infinite when spec.upper is +infinity.
QuadratureResult integrate(const Integral& spec,
                           std::size_t max_subdivisions = kDefaultSubdivisionBudget);

/// int_lower^infinity f(x) dx via x = lower + t/(1-t), dx = dt/(1-t)^2, t in [0, 1).
QuadratureResult integrate_semi_infinite(const Integrand& f, double lower,
                                         QuadratureTolerance tol = {},
                                         std::size_t max_subdivisions = kDefaultSubdivisionBudget);

/// Sum of integrals over consecutive panels [p0, p1], [p1, p2], ...; when
/// `infinite_tail` is set a final panel [p_last, infinity) is added. Breakpoints
/// must be strictly increasing. Use it to place panel edges at known scales.
QuadratureResult integrate_panels(const Integrand& f, std::span<const double> breakpoints,
                                  bool infinite_tail, QuadratureTolerance tol = {},
                                  std::size_t max_subdivisions = kDefaultSubdivisionBudget);

}  // namespace psring
