#include <cmath>
#include <numbers>

#include "doctest.h"
#include "psring/errors.hpp"
#include "psring/special_fns.hpp"

using namespace psring;

namespace {

constexpr double kPi = std::numbers::pi;

// Trapezoid rule over [0, pi/2]. The integrands below are smooth and even
// about both ends, so the rule converges geometrically.
template <class F>
double trapezoid_quarter_period(F f, int panels = 256) {
  const double h = 0.5 * kPi / panels;
  double sum = 0.5 * (f(0.0) + f(0.5 * kPi));
  for (int i = 1; i < panels; ++i) {
    sum += f(i * h);
  }
  return sum * h;
}

double K_oracle(double k) {
  return trapezoid_quarter_period(
      [k](double t) { return 1.0 / std::sqrt(1.0 - k * k * std::sin(t) * std::sin(t)); });
}

double E_oracle(double k) {
  return trapezoid_quarter_period(
      [k](double t) { return std::sqrt(1.0 - k * k * std::sin(t) * std::sin(t)); });
}

// (2 - k^2) K - 2 E = k^2 int -cos(2t) / sqrt(1 - k^2 sin^2 t) dt.
double maxwell_oracle(double k) {
  return k * k * trapezoid_quarter_period([k](double t) {
           return -std::cos(2.0 * t) / std::sqrt(1.0 - k * k * std::sin(t) * std::sin(t));
         });
}

}  // namespace

TEST_SUITE("special_fns") {
  TEST_CASE("K and E at k = 0.5 against a trapezoid oracle") {
    // Frozen from the oracle.
    constexpr double K_half = 1.6857503548125961;
    constexpr double E_half = 1.4674622093394276;
    CHECK(K_oracle(0.5) == doctest::Approx(K_half).epsilon(1e-14));
    CHECK(E_oracle(0.5) == doctest::Approx(E_half).epsilon(1e-14));
    CHECK(ellip_K(0.5) == doctest::Approx(K_half).epsilon(1e-15));
    CHECK(ellip_E(0.5) == doctest::Approx(E_half).epsilon(1e-15));
  }

  TEST_CASE("K, E and the Maxwell combination agree with the oracle across moduli") {
    for (double k : {0.05, 0.2, 0.5, 0.8, 0.9, 0.95}) {
      CAPTURE(k);
      const auto ce = complete_elliptic(k, std::sqrt(1.0 - k * k));
      CHECK(ce.K == doctest::Approx(K_oracle(k)).epsilon(1e-13));
      CHECK(ce.E == doctest::Approx(E_oracle(k)).epsilon(1e-13));
      CHECK(ce.maxwell == doctest::Approx(maxwell_oracle(k)).epsilon(1e-11));
    }
  }

  TEST_CASE("values at k = 0") {
    CHECK(ellip_K(0.0) == doctest::Approx(0.5 * kPi).epsilon(1e-16));
    CHECK(ellip_E(0.0) == doctest::Approx(0.5 * kPi).epsilon(1e-16));
    CHECK(ellip_E(1.0) == 1.0);
    CHECK(complete_elliptic(0.0, 1.0).maxwell == 0.0);
  }

  TEST_CASE("Maxwell combination keeps full relative accuracy as k -> 0") {
    // (pi/16) k^4 (1 + 3 k^2 / 4 + ...)
    for (double k : {1e-3, 1e-5, 1e-7}) {
      CAPTURE(k);
      const double kc = std::sqrt((1.0 - k) * (1.0 + k));
      const double series = kPi / 16.0 * std::pow(k, 4) * (1.0 + 0.75 * k * k);
      CHECK(complete_elliptic(k, kc).maxwell == doctest::Approx(series).epsilon(1e-12));
    }
  }

  TEST_CASE("logarithmic asymptote near k = 1") {
    const double k = 0.999999;
    const double kc = std::sqrt((1.0 - k) * (1.0 + k));
    const double L = std::log(4.0 / kc);
    const double expected = L + 0.25 * kc * kc * (L - 1.0);
    CHECK(ellip_K(k) == doctest::Approx(expected).epsilon(1e-12));
    // Complement passed directly: K keeps growing like ln(4/kc).
    const double tiny = 1e-12;
    CHECK(complete_elliptic(1.0, tiny).K == doctest::Approx(std::log(4.0 / tiny)).epsilon(1e-14));
  }

  TEST_CASE("Legendre relation on 100 moduli") {
    for (int i = 1; i <= 100; ++i) {
      const double theta = 0.5 * kPi * i / 101.0;
      const double k = std::sin(theta);
      const double kc = std::cos(theta);
      const auto a = complete_elliptic(k, kc);
      const auto b = complete_elliptic(kc, k);
      CAPTURE(k);
      CHECK(std::abs(a.E * b.K + b.E * a.K - a.K * b.K - 0.5 * kPi) <= 1e-12);
    }
  }

  TEST_CASE("K increases and E decreases with k") {
    double K_prev = ellip_K(0.0);
    double E_prev = ellip_E(0.0);
    for (int i = 1; i < 200; ++i) {
      const double k = i / 200.0;
      const double K = ellip_K(k);
      const double E = ellip_E(k);
      CHECK(K > K_prev);
      CHECK(E < E_prev);
      CHECK(E <= 0.5 * kPi);
      CHECK(K >= 0.5 * kPi);
      K_prev = K;
      E_prev = E;
    }
  }

  TEST_CASE("domain errors") {
    CHECK_THROWS_AS(ellip_K(1.0), DomainError);
    CHECK_THROWS_AS(ellip_K(-0.1), DomainError);
    CHECK_THROWS_AS(ellip_K(std::nan("")), DomainError);
    CHECK_THROWS_AS(ellip_E(1.1), DomainError);
    CHECK_THROWS_AS(complete_elliptic(0.6, 0.0), DomainError);
    CHECK_THROWS_AS(complete_elliptic(0.6, 0.9), DomainError);
  }
}
