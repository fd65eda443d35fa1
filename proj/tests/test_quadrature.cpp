#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "psring/quadrature.hpp"

using namespace psring;

namespace {

constexpr double kPi = std::numbers::pi;

struct Poly {
  std::vector<double> c;  // c[i] x^i

  double operator()(double x) const {
    double p = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) p = p * x + *it;
    return p;
  }
  double antiderivative(double x) const {
    double p = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) p = p * x + c[i] / static_cast<double>(i + 1);
    return p * x;
  }
};

Poly random_poly(std::mt19937& rng, int degree) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Poly p;
  for (int i = 0; i <= degree; ++i) p.c.push_back(u(rng));
  return p;
}

}  // namespace

TEST_SUITE("quadrature") {
  TEST_CASE("closed-form integrals") {
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, kPi).value ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK(integrate([](double x) { return x * x * (1.0 - x); }, 0.0, 1.0).value ==
          doctest::Approx(1.0 / 12.0).epsilon(1e-14));
    CHECK(integrate([](double x) { return std::exp(x); }, -1.0, 1.0).value ==
          doctest::Approx(std::exp(1.0) - std::exp(-1.0)).epsilon(1e-14));
  }

  TEST_CASE("semi-infinite integrals") {
    const auto quartic = [](double x) {
      const double d = 1.0 + x * x;
      return x * x / (d * d * d * d);
    };
    CHECK(integrate_semi_infinite(quartic, 0.0).value == doctest::Approx(kPi / 32.0).epsilon(1e-13));
    CHECK(integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0).value ==
          doctest::Approx(1.0).epsilon(1e-13));
    CHECK(integrate_semi_infinite([](double x) { return 1.0 / (1.0 + x * x); }, 1.0).value ==
          doctest::Approx(0.25 * kPi).epsilon(1e-13));
    CHECK(integrate_semi_infinite([](double y) { return y * y * std::exp(-2.0 * y); }, 0.0).value ==
          doctest::Approx(0.25).epsilon(1e-13));
  }

  TEST_CASE("Integral dispatches on an infinite upper limit") {
    const Integral finite{[](double x) { return std::cos(x); }, 0.0, 0.5 * kPi};
    const Integral tail{[](double x) { return std::exp(-2.0 * x); }, 0.0,
                        std::numeric_limits<double>::infinity()};
    CHECK(integrate(finite).value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(integrate(tail).value == doctest::Approx(0.5).epsilon(1e-13));
  }

  TEST_CASE("panels with breakpoints at a sharp feature") {
    // Narrow Lorentzian at x = 1e-3 plus a tail.
    const double w = 1e-6;
    const auto f = [w](double x) { return w / ((x - 1e-3) * (x - 1e-3) + w * w) / kPi; };
    const double exact = (std::atan((2.0 - 1e-3) / w) - std::atan(-1e-3 / w)) / kPi;
    const std::vector<double> edges{0.0, 1e-3, 2.0};
    CHECK(integrate_panels(f, edges, false).value == doctest::Approx(exact).epsilon(1e-11));

    const std::vector<double> tail_edges{0.0, 1.0, 10.0};
    CHECK(integrate_panels([](double x) { return std::exp(-x); }, tail_edges, true).value ==
          doctest::Approx(1.0).epsilon(1e-13));
  }

  TEST_CASE("removable endpoint singularity is never sampled") {
    // sin(x)/x at 0 would be 0/0.
    const auto f = [](double x) { return std::sin(x) / x; };
    CHECK(std::isfinite(integrate(f, 0.0, 1.0).value));
    CHECK(integrate(f, 0.0, 1.0).value == doctest::Approx(0.94608307036718301494).epsilon(1e-14));
  }

  TEST_CASE("integrable endpoint singularity") {
    const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, {1e-10, 0.0});
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
  }

  TEST_CASE("linearity and additivity on random polynomials") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
      const Poly p = random_poly(rng, 8);
      const Poly q = random_poly(rng, 5);
      const double a = u(rng), b = u(rng);
      const double lo = -2.0 + u(rng), hi = 2.0 + u(rng);
      const double mid = 0.5 * (lo + hi) + 0.3 * u(rng);
      const double Ip = integrate(p, lo, hi).value;
      const double Iq = integrate(q, lo, hi).value;
      const double Ic = integrate([&](double x) { return a * p(x) + b * q(x); }, lo, hi).value;
      const double scale = 1.0 + std::abs(Ip) + std::abs(Iq);
      CHECK(std::abs(Ic - (a * Ip + b * Iq)) <= 1e-12 * scale);
      CHECK(std::abs(integrate(p, lo, mid).value + integrate(p, mid, hi).value - Ip) <=
            1e-12 * scale);
      CHECK(std::abs(Ip - (p.antiderivative(hi) - p.antiderivative(lo))) <= 1e-12 * scale);
    }
  }

  TEST_CASE("non-finite integrand values are reported with the abscissa") {
    const auto f = [](double x) { return x > 0.5 ? std::nan("") : x; };
    CHECK_THROWS_AS(integrate(f, 0.0, 1.0), NonFiniteValue);
  }

  TEST_CASE("exhausted budget carries the best estimate") {
    const auto f = [](double x) { return std::sin(1.0 / x); };
    try {
      integrate(f, 1e-4, 1.0, {1e-14, 0.0}, 5);
      FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
      CHECK(std::isfinite(e.best_estimate().value));
      CHECK(e.best_estimate().error_estimate > 0.0);
    }
  }

  TEST_CASE("deterministic results") {
    const auto f = [](double x) { return std::log(x) * std::cos(3.0 * x); };
    const auto a = integrate(f, 0.0, 2.0);
    const auto b = integrate(f, 0.0, 2.0);
    CHECK(a.value == b.value);
    CHECK(a.evaluations == b.evaluations);
  }

  TEST_CASE("invalid arguments") {
    const auto f = [](double x) { return x; };
    CHECK_THROWS_AS(integrate(f, 0.0, std::nan("")), DomainError);
    CHECK_THROWS_AS(integrate(f, 2.0, 0.5), DomainError);
    CHECK_THROWS_AS(integrate(f, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(integrate(f, 0.0, 1.0, {-1.0, 0.0}), DomainError);
    const std::vector<double> unsorted{0.0, 2.0, 1.0};
    CHECK_THROWS_AS(integrate_panels(f, unsorted, false), DomainError);
  }
}
