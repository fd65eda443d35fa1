#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

namespace psring {

using ScalarObjective = std::function<double(double)>;

/// lo < mid < hi with f(mid) < min(f(lo), f(hi)).
struct Bracket {
  double lo;
  double mid;
  double hi;
};

enum class MinimumKind { local_min, global_min };

std::string_view to_string(MinimumKind kind);

/// A located minimum of an effective potential.
struct StationaryPoint {
  double r_star;  // reduced Compton lengths
  double v_star;  // units of mc^2
  MinimumKind kind = MinimumKind::local_min;
  Bracket bracket;
};

inline constexpr double kDefaultXTol = 1e-9;

/// Brent's derivative-free minimizer: golden-section steps with parabolic
/// interpolation when it is safe. x_tol is relative to |x| (an absolute floor of
/// x_tol * 1e-12 covers minima at the origin).
///
/// Throws DomainError for an invalid bracket and NonFiniteValue if f is not
/// finite at a probed abscissa. The result has kind = local_min.
StationaryPoint minimize_scalar(const ScalarObjective& f, Bracket bracket,
                                double x_tol = kDefaultXTol);

struct ScanOptions {
  double x_tol = kDefaultXTol;
  bool parallel = true;  // evaluate the scan grid with the OpenMP kernel
};

/// Scan f on a log grid over [r_min, r_max], detect every - to + change of the
/// discrete slope and refine each with minimize_scalar. Returns minima sorted by
/// r_star; the one with least v_star (ties within 1e-12: smaller r_star) is
/// labelled global_min. An empty result means no interior minimum was found.
///
/// Resolves every minimum whose basin spans at least three grid points.
std::vector<StationaryPoint> find_local_minima(const ScalarObjective& f, double r_min, double r_max,
                                               std::size_t points_per_decade,
                                               ScanOptions options = {});

/// Root of g in [lo, hi] by Brent's method (inverse quadratic / secant steps
/// with bisection fallback). Requires g(lo) * g(hi) <= 0. The returned point
/// is the final bracket end with smaller |g|, and the bracket width is <= tol
/// (or has shrunk to adjacent doubles).
double find_root(const ScalarObjective& g, double lo, double hi, double tol);

}  // namespace psring
