#include "psring/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "format.hpp"
#include "psring/errors.hpp"
#include "psring/grid.hpp"

namespace psring {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kGolden = 0.3819660112501051;  // (3 - sqrt 5) / 2
constexpr int kMaxIterations = 500;

double checked(const ScalarObjective& f, double x, const char* where) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    throw NonFiniteValue(where, x);
  }
  return y;
}

}  // namespace

std::string_view to_string(MinimumKind kind) {
  return kind == MinimumKind::global_min ? "global_min" : "local_min";
}

StationaryPoint minimize_scalar(const ScalarObjective& f, Bracket bracket, double x_tol) {
  if (!(bracket.lo < bracket.mid && bracket.mid < bracket.hi)) {
    throw DomainError("minimize_scalar: bracket must satisfy lo < mid < hi");
  }
  if (!(x_tol > 0.0)) {
    throw DomainError("minimize_scalar: x_tol must be positive");
  }
  const double f_lo = checked(f, bracket.lo, "minimize_scalar");
  const double f_hi = checked(f, bracket.hi, "minimize_scalar");
  const double f_mid = checked(f, bracket.mid, "minimize_scalar");
  if (!(f_mid < std::min(f_lo, f_hi))) {
    throw DomainError("minimize_scalar: f(mid) must be below f(lo) and f(hi)");
  }

  double a = bracket.lo;
  double b = bracket.hi;
  double x = bracket.mid;
  double w = x;
  double v = x;
  double fx = f_mid;
  double fw = fx;
  double fv = fx;
  double d = 0.0;
  double e = 0.0;
  const double abs_floor = x_tol * 1e-12;

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    const double m = 0.5 * (a + b);
    const double tol1 = x_tol * std::abs(x) + abs_floor + kEps * std::abs(x);
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - m) <= tol2 - 0.5 * (b - a)) {
      break;
    }
    bool golden = true;
    if (std::abs(e) > tol1) {
      // Parabola through (v, fv), (w, fw), (x, fx).
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) {
        p = -p;
      } else {
        q = -q;
      }
      const double e_prev = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * e_prev) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) {
          d = x < m ? tol1 : -tol1;
        }
        golden = false;
      }
    }
    if (golden) {
      e = (x < m ? b : a) - x;
      d = kGolden * e;
    }
    const double u = std::abs(d) >= tol1 ? x + d : x + (d > 0.0 ? tol1 : -tol1);
    const double fu = checked(f, u, "minimize_scalar");
    if (fu <= fx) {
      if (u < x) {
        b = x;
      } else {
        a = x;
      }
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      if (u < x) {
        a = u;
      } else {
        b = u;
      }
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  return {x, fx, MinimumKind::local_min, bracket};
}

std::vector<StationaryPoint> find_local_minima(const ScalarObjective& f, double r_min, double r_max,
                                               std::size_t points_per_decade, ScanOptions options) {
  if (!(r_min > 0.0 && r_min < r_max)) {
    throw DomainError("find_local_minima: need 0 < r_min < r_max");
  }
  if (points_per_decade < 10) {
    throw DomainError("find_local_minima: points_per_decade must be >= 10");
  }
  const auto grid = log_grid_per_decade(r_min, r_max, points_per_decade);
  const auto values =
      options.parallel ? evaluate_on_grid(f, grid) : evaluate_on_grid_serial(f, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw NonFiniteValue("find_local_minima", grid[i]);
    }
  }

  std::vector<StationaryPoint> minima;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    if (values[i] < values[i - 1] && values[i] < values[i + 1]) {
      auto p = minimize_scalar(f, {grid[i - 1], grid[i], grid[i + 1]}, options.x_tol);
      const bool duplicate =
          !minima.empty() &&
          std::abs(minima.back().r_star - p.r_star) <= 10.0 * options.x_tol * p.r_star;
      if (duplicate) {
        if (p.v_star < minima.back().v_star) {
          minima.back() = p;
        }
      } else {
        minima.push_back(p);
      }
    }
  }
  std::sort(minima.begin(), minima.end(),
            [](const StationaryPoint& a, const StationaryPoint& b) { return a.r_star < b.r_star; });

  if (!minima.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < minima.size(); ++i) {
      const double dv = minima[i].v_star - minima[best].v_star;
      if (dv < -1e-12) {
        best = i;
      }
    }
    minima[best].kind = MinimumKind::global_min;
  }
  return minima;
}

double find_root(const ScalarObjective& g, double lo, double hi, double tol) {
  if (!(lo < hi)) {
    throw DomainError("find_root: need lo < hi");
  }
  double a = lo;
  double b = hi;
  double fa = checked(g, a, "find_root");
  double fb = checked(g, b, "find_root");
  if (fa == 0.0) {
    return a;
  }
  if (fb == 0.0) {
    return b;
  }
  if ((fa > 0.0) == (fb > 0.0)) {
    throw DomainError("find_root: no sign change on [" + detail::format_number(lo) + ", " +
                      detail::format_number(hi) + "]");
  }
  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;

  for (int iter = 0; iter < kMaxIterations; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * kEps * std::abs(b) + 0.5 * tol;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol1 || fb == 0.0) {
      return b;
    }
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p;
      double q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) {
        q = -q;
      } else {
        p = -p;
      }
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : (m > 0.0 ? tol1 : -tol1);
    fb = checked(g, b, "find_root");
  }
  throw NumericalError("find_root: iteration budget exhausted");
}

}  // namespace psring
