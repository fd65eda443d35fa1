#include "psring/grid.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "format.hpp"
#include "psring/errors.hpp"

namespace psring {

std::vector<double> make_grid(double lo, double hi, std::size_t points, Spacing spacing) {
  if (points < 2) {
    throw DomainError("make_grid: need at least 2 points");
  }
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("make_grid: need finite lo < hi, got [" + detail::format_number(lo) + ", " +
                      detail::format_number(hi) + "]");
  }
  if (spacing == Spacing::log && !(lo > 0.0)) {
    throw DomainError("make_grid: log spacing needs lo > 0");
  }
  std::vector<double> grid(points);
  const double last = static_cast<double>(points - 1);
  if (spacing == Spacing::log) {
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (std::size_t i = 0; i < points; ++i) {
      grid[i] = std::exp(a + (b - a) * static_cast<double>(i) / last);
    }
  } else {
    for (std::size_t i = 0; i < points; ++i) {
      grid[i] = lo + (hi - lo) * static_cast<double>(i) / last;
    }
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::vector<double> log_grid_per_decade(double lo, double hi, std::size_t points_per_decade) {
  if (!(lo > 0.0 && lo < hi)) {
    throw DomainError("log_grid_per_decade: need 0 < lo < hi");
  }
  const double decades = std::log10(hi / lo);
  const auto points = static_cast<std::size_t>(
      std::ceil(decades * static_cast<double>(points_per_decade))) + 1;
  return make_grid(lo, hi, std::max<std::size_t>(points, 2), Spacing::log);
}

std::vector<double> evaluate_on_grid(const ScalarFunction& f, std::span<const double> grid) {
  const auto n = static_cast<long>(grid.size());
  std::vector<double> values(grid.size());
  std::vector<std::exception_ptr> failures(grid.size());
  bool any_failure = false;

#pragma omp parallel for schedule(dynamic, 4) reduction(|| : any_failure)
  for (long i = 0; i < n; ++i) {
    try {
      values[i] = f(grid[i]);
    } catch (...) {
      failures[i] = std::current_exception();
      any_failure = true;
    }
  }

  if (any_failure) {
    for (const auto& e : failures) {
      if (e) {
        std::rethrow_exception(e);
      }
    }
  }
  return values;
}

std::vector<double> evaluate_on_grid_serial(const ScalarFunction& f, std::span<const double> grid) {
  std::vector<double> values;
  values.reserve(grid.size());
  for (double x : grid) {
    values.push_back(f(x));
  }
  return values;
}

}  // namespace psring
