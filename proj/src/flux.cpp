#include "psring/flux.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <numbers>
#include <string>

#include "format.hpp"
#include "psring/errors.hpp"
#include "psring/grid.hpp"

namespace psring {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRMin = 1e-9;
constexpr double kRMax = 1e-2;
constexpr double kResidualTarget = 1e-13;

std::string fmt(double x) { return detail::format_number(x); }

}  // namespace

double flux_integral(double u, QuadratureTolerance tol) {
  if (!(u >= 0.0) || !std::isfinite(u)) {
    throw DomainError("flux_integral: kappa R must be non-negative, got " + fmt(u));
  }
  // Symmetric about pi/2.
  const Integrand integrand = [u](double phi) {
    const double s = std::sin(phi);
    const double screened = s == 0.0 ? 2.0 * u : -std::expm1(-2.0 * u * s) / s;
    return std::cos(2.0 * phi) * screened;
  };
  return 2.0 * integrate(integrand, 0.0, 0.5 * kPi, tol).value;
}

double flux_rhs(double kappa, double R, double alpha, QuadratureTolerance tol) {
  if (!(kappa > 0.0) || !(R > 0.0)) {
    throw DomainError("flux_rhs: kappa and R must be positive");
  }
  return alpha * alpha / (2.0 * kPi) * flux_integral(kappa * R, tol);
}

FluxSolution solve_R_given_kappa(double kappa, double alpha) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw DomainError("solve_R_given_kappa: kappa must be positive");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("solve_R_given_kappa: alpha must lie in (0, 1)");
  }
  auto excess = [kappa, alpha](double R) { return R - flux_rhs(kappa, R, alpha); };

  const auto grid = log_grid_per_decade(kRMin, kRMax, 10);
  const auto values = evaluate_on_grid(excess, grid);
  // Small R: R > rhs. The constraint curve crosses twice when kappa is large
  // enough; take the crossing back to R > rhs (the branch that continues to
  // larger kappa R), or the only crossing if there is just one.
  std::size_t first = grid.size();
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if ((values[i] > 0.0) != (values[i + 1] > 0.0)) {
      if (first == grid.size() || values[i] <= 0.0) {
        first = i;
      }
    }
  }
  if (first == grid.size()) {
    throw NumericalError("solve_R_given_kappa: no solution of the flux constraint for R in [" +
                         fmt(kRMin) + ", " + fmt(kRMax) + "] at kappa = " + fmt(kappa));
  }

  double lo = grid[first];
  double hi = grid[first + 1];
  const bool positive_at_lo = values[first] > 0.0;
  double R = 0.5 * (lo + hi);
  double h = excess(R);
  for (int iter = 0; iter < 200; ++iter) {
    if (std::abs(h) <= kResidualTarget * R) {
      break;
    }
    if ((h > 0.0) == positive_at_lo) {
      lo = R;
    } else {
      hi = R;
    }
    if (!(hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi)) {
      break;
    }
    // Damped fixed-point step R <- R + 0.5 (rhs - R); bisect if it leaves the bracket.
    double next = R - 0.5 * h;
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    const double h_next = excess(next);
    if (std::abs(h_next) > 0.5 * std::abs(h)) {
      // Slow contraction: take a bisection step as well.
      R = next;
      h = h_next;
      if ((h > 0.0) == positive_at_lo) {
        lo = R;
      } else {
        hi = R;
      }
      next = 0.5 * (lo + hi);
      R = next;
      h = excess(R);
    } else {
      R = next;
      h = h_next;
    }
  }
  return {kappa, R, h};
}

std::optional<StationaryPoint> bltp_biot_savart_minimum(const RingParams& ring,
                                                        const PhysicalConfig& cfg,
                                                        std::size_t points_per_decade,
                                                        double x_tol) {
  const PotentialModel model{RingBLTP{ring}, cfg};
  auto minima = model_minima(model, kBiotSavartMin, kBiotSavartMax, points_per_decade,
                             {x_tol, true});
  for (const auto& m : minima) {
    if (m.kind == MinimumKind::global_min) {
      return m;
    }
  }
  return std::nullopt;
}

BltpTuning tune_bltp(double alpha, double target_energy, BltpTuneOptions options) {
  PhysicalConfig cfg{alpha, 1};
  cfg.validate();
  if (!(options.u_lo > 0.0 && options.u_lo < options.u_hi)) {
    throw DomainError("tune_bltp: need 0 < u_lo < u_hi");
  }

  auto ring_for = [alpha](double u) {
    const double R = alpha * alpha / (2.0 * kPi) * flux_integral(u);
    return RingParams{R, u / R};
  };
  auto minimum_for = [&](double u) {
    auto m = bltp_biot_savart_minimum(ring_for(u), cfg, options.points_per_decade, options.x_tol);
    if (!m) {
      throw NumericalError("tune_bltp: no Biot-Savart minimum of V_1 at kappa R = " +
                           fmt(u));
    }
    return *m;
  };
  auto excess = [&](double u) { return minimum_for(u).v_star - target_energy; };

  const double g_lo = excess(options.u_lo);
  const double g_hi = excess(options.u_hi);
  if ((g_lo > 0.0) == (g_hi > 0.0)) {
    throw NumericalError("tune_bltp: minimum energy - target does not change sign for kappa R in [" +
                         fmt(options.u_lo) + ", " + fmt(options.u_hi) +
                         "]: " + fmt(g_lo) + ", " + fmt(g_hi));
  }
  const double u = find_root(excess, options.u_lo, options.u_hi, 1e-16);
  const auto ring = ring_for(u);
  const double residual = ring.R - flux_rhs(*ring.kappa, ring.R, alpha);
  return {{*ring.kappa, ring.R, residual}, minimum_for(u), u};
}

}  // namespace psring
