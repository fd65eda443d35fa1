#pragma once

// Magnetic-flux quantization for a BLTP Born ring: the self-flux through the
// ring must equal the flux quantum e/alpha, which ties kappa to R via
//   R = (alpha^2 / 2 pi) int_0^pi cos(2 phi) (1 - exp(-2 kappa R sin phi)) / sin phi dphi.
// The integral depends on kappa and R only through u = kappa R.

#include <utility>

#include "psring/models.hpp"
#include "psring/optimize.hpp"
#include "psring/quadrature.hpp"

namespace psring {

struct FluxSolution {
  double kappa;
  double R;
  double residual;  // R - flux_rhs(kappa, R)
};

/// int_0^pi cos(2 phi) (1 - exp(-2 u sin phi)) / sin phi dphi. The integrand's
/// value at sin phi = 0 is its limit 2u.
double flux_integral(double u, QuadratureTolerance tol = {});

/// Right-hand side of the flux constraint.
double flux_rhs(double kappa, double R, double alpha, QuadratureTolerance tol = {});

/// R on the constraint for fixed kappa, searched in [1e-9, 1e-2].
///
/// F(u)/u peaks near u = 2.1, so below kappa ~ 1.54e5 there is no solution and
/// above it there are two. The returned root is the upper one (where
/// R - flux_rhs turns positive again, u beyond the peak), which is the branch
/// the tuned BLTP parameters lie on. It is located by a log scan and refined
/// by damped (0.5) fixed-point steps that fall back to bisection whenever a
/// step leaves the sign-change bracket. Throws NumericalError when the bracket
/// holds no solution.
FluxSolution solve_R_given_kappa(double kappa, double alpha = kAlphaDefault);

struct BltpTuneOptions {
  double u_lo = 3.0;  // search interval for kappa R
  double u_hi = 6.0;
  std::size_t points_per_decade = 40;
  double x_tol = 1e-10;
};

struct BltpTuning {
  FluxSolution flux;
  StationaryPoint minimum;
  double u;  // kappa R
};

/// (kappa, R) on the flux constraint such that the Biot-Savart global minimum
/// of V_1^(4) equals target_energy. Parametrizes the constraint by u = kappa R
/// (R = alpha^2 F(u) / 2 pi, kappa = u / R) and root-finds on u.
BltpTuning tune_bltp(double alpha, double target_energy, BltpTuneOptions options = {});

/// Biot-Savart global minimum of V_n^(4) for given ring parameters, or none.
std::optional<StationaryPoint> bltp_biot_savart_minimum(const RingParams& ring,
                                                        const PhysicalConfig& cfg,
                                                        std::size_t points_per_decade = 40,
                                                        double x_tol = 1e-10);

}  // namespace psring
