#include "psring/variational.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "format.hpp"
#include "psring/errors.hpp"
#include "psring/quadrature.hpp"

namespace psring {
namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be positive, got " + detail::format_number(value));
  }
}

}  // namespace

TrialScale::TrialScale(double a) : a_(a) {
  require_positive(a, "trial scale a");
}

double trial_momentum_density(TrialScale a, double k) {
  const double av = a.value();
  const double x = 2.0 * kPi * av * k;
  const double d = 1.0 + x * x;
  return 64.0 * kPi * av * av * av / (d * d * d * d);
}

double kinetic_expectation(TrialScale a) {
  const double av = a.value();
  // (64/pi) int x^2/(1+x^2)^4 dx = 2 exactly, so integrate only the excess
  // sqrt(1 + t) - 1 = t / (1 + sqrt(1 + t)), t = x^2/a^2.
  const Integrand excess = [av](double x) {
    const double t = (x / av) * (x / av);
    const double d = 1.0 + x * x;
    return x * x * (t / (1.0 + std::sqrt(1.0 + t))) / (d * d * d * d);
  };
  const double lo = std::min(av, 1.0);
  const double hi = std::max(av, 1.0);
  std::vector<double> edges{0.0, lo};
  if (hi > lo) {
    edges.push_back(hi);
  }
  const auto r = integrate_panels(excess, edges, true, {1e-13, 0.0});
  return 2.0 + 64.0 / kPi * r.value;
}

double potential_expectation(TrialScale a, double R, const PhysicalConfig& cfg) {
  require_positive(R, "ring radius R");
  cfg.validate();
  const double av = a.value();
  const double coupling = cfg.alpha * cfg.alpha * cfg.alpha;
  // r = a y: (4/a^3) int r^2 U(r) e^{-2r/a} dr = 4 int y^2 U(a y) e^{-2y} dy.
  const Integrand integrand = [&](double y) {
    if (y == 0.0) {
      return 0.0;
    }
    const double u = ring_pair_energy(R, cfg.alpha, coupling, av * y).total();
    return y * y * u * std::exp(-2.0 * y);
  };
  // Panel edges at the ring scale R/a and at the trial scale.
  constexpr double kCutoff = 40.0;
  std::vector<double> edges{0.0};
  const double ring_scale = R / av;
  for (int j = -8; j <= 8; ++j) {
    const double e = ring_scale * std::pow(4.0, j);
    if (e > 1e-12 && e < kCutoff) {
      edges.push_back(e);
    }
  }
  for (double e : {0.125, 0.5, 2.0, 8.0, kCutoff}) {
    edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](double x, double y) { return std::abs(x - y) <= 1e-12 * y; }),
              edges.end());
  const auto r = integrate_panels(integrand, edges, true, {1e-13, 0.0});
  return 4.0 * r.value;
}

double energy_expectation(TrialScale a, double R, const PhysicalConfig& cfg) {
  return kinetic_expectation(a) + potential_expectation(a, R, cfg);
}

VariationalResult evaluate_trial(TrialScale a, double R, const PhysicalConfig& cfg) {
  const double kinetic = kinetic_expectation(a);
  const double potential = potential_expectation(a, R, cfg);
  return {a.value(), kinetic, potential, kinetic + potential, R, MinimumKind::local_min};
}

std::vector<VariationalResult> minimize_over_a(double R, double a_min, double a_max,
                                               const PhysicalConfig& cfg,
                                               VariationalOptions options) {
  require_positive(R, "ring radius R");
  if (!(a_min > 0.0 && a_min < a_max)) {
    throw DomainError("minimize_over_a: need 0 < a_min < a_max");
  }
  cfg.validate();
  const auto energy = [R, &cfg](double a) { return energy_expectation(TrialScale(a), R, cfg); };
  const auto minima =
      find_local_minima(energy, a_min, a_max, options.points_per_decade,
                        {options.x_tol, options.parallel});
  if (minima.empty()) {
    throw NumericalError("minimize_over_a: no minimum of the energy expectation for a in [" +
                         detail::format_number(a_min) + ", " + detail::format_number(a_max) + "]");
  }
  std::vector<VariationalResult> results;
  results.reserve(minima.size());
  for (const auto& m : minima) {
    results.push_back(evaluate_trial(TrialScale(m.r_star), R, cfg));
  }
  std::stable_sort(results.begin(), results.end(),
                   [](const VariationalResult& x, const VariationalResult& y) {
                     return x.energy < y.energy;
                   });
  results.front().kind = MinimumKind::global_min;
  return results;
}

}  // namespace psring
