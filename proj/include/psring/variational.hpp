#pragma once

// Rayleigh-Ritz upper bound for H = 2 sqrt(1 - Laplacian) + U_R(r) using the
// hydrogenic trial family psi_a(q) = exp(-|q|/a) / sqrt(pi a^3), whose Fourier
// transform (convention psi^(k) = int exp(-2 pi i k.q) psi(q) d^3q) is
// psi^_a(k) = 8 sqrt(pi a^3) / (1 + 4 pi^2 a^2 |k|^2)^2.
//
// Every 3-D integral is reduced to a radial one before quadrature:
//   kinetic   = 2 int_0^inf 4 pi k^2 sqrt(1 + 4 pi^2 k^2) |psi^_a(k)|^2 dk
//             = (64/pi) int_0^inf x^2 sqrt(1 + x^2/a^2) / (1 + x^2)^4 dx,  x = 2 pi a k
//   potential = int_0^inf 4 pi r^2 U_R(r) |psi_a(r)|^2 dr
//             = (4/a^3) int_0^inf r^2 U_R(r) exp(-2r/a) dr

#include <cstddef>
#include <vector>

#include "psring/models.hpp"
#include "psring/optimize.hpp"

namespace psring {

/// Exponential trial-function scale a > 0 (reduced Compton lengths).
class TrialScale {
public:
  explicit TrialScale(double a);
  double value() const noexcept { return a_; }

private:
  double a_;
};

struct VariationalResult {
  double a_star;
  double kinetic;
  double potential;
  double energy;  // kinetic + potential
  double R;
  MinimumKind kind = MinimumKind::local_min;
};

/// |psi^_a(k)|^2.
double trial_momentum_density(TrialScale a, double k);

/// <psi_a| 2 sqrt(1 - Laplacian) |psi_a>; always >= 2.
double kinetic_expectation(TrialScale a);

/// <psi_a| U_R |psi_a>; always negative.
double potential_expectation(TrialScale a, double R, const PhysicalConfig& cfg = {});

double energy_expectation(TrialScale a, double R, const PhysicalConfig& cfg = {});

/// Kinetic, potential and total expectation at one scale.
VariationalResult evaluate_trial(TrialScale a, double R, const PhysicalConfig& cfg = {});

struct VariationalOptions {
  std::size_t points_per_decade = 20;
  double x_tol = 1e-9;
  bool parallel = true;
};

/// All local minima of the energy expectation over a in [a_min, a_max], sorted
/// by energy (lowest first; that one is labelled global_min and is the
/// variational bound). Throws NumericalError if the scan finds no minimum.
std::vector<VariationalResult> minimize_over_a(double R, double a_min, double a_max,
                                               const PhysicalConfig& cfg = {},
                                               VariationalOptions options = {});

}  // namespace psring
