#pragma once

// Grid construction and data-parallel evaluation of scalar functions on grids.
//
// evaluate_on_grid is the OpenMP kernel used by every scan in the library;
// evaluate_on_grid_serial is the reference implementation it is tested and
// benchmarked against. Both produce bit-identical output for a pure f.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace psring {

enum class Spacing { log, linear };

/// `points` values from lo to hi inclusive. Requires 0 < lo < hi for log
/// spacing, lo < hi for linear, and points >= 2.
std::vector<double> make_grid(double lo, double hi, std::size_t points, Spacing spacing);

/// Log grid with the given density; endpoints included.
std::vector<double> log_grid_per_decade(double lo, double hi, std::size_t points_per_decade);

using ScalarFunction = std::function<double(double)>;

/// f(x_i) for every grid point, evaluated in parallel. f must be safe to call
/// concurrently. If any evaluation throws, the exception from the lowest
/// failing index is rethrown after the loop.
std::vector<double> evaluate_on_grid(const ScalarFunction& f, std::span<const double> grid);

/// Serial reference for evaluate_on_grid.
std::vector<double> evaluate_on_grid_serial(const ScalarFunction& f, std::span<const double> grid);

}  // namespace psring
