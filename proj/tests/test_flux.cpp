#include <cmath>
#include <numbers>

#include "doctest.h"
#include "psring/errors.hpp"
#include "psring/flux.hpp"

using namespace psring;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAlpha = kAlphaDefault;

// int_0^pi cos(2 phi) (1 - exp(-2 u sin phi)) / sin phi dphi by expanding the
// exponential: sum_m (-1)^(m+1) (2u)^m / m! (W_(m-1) - 2 W_(m+1)), with the
// Wallis integrals W_p = int_0^pi sin^p, W_(p+2) = W_p (p+1)/(p+2).
double flux_integral_series(double u) {
  double W[200];
  W[0] = kPi;
  W[1] = 2.0;
  for (int p = 0; p + 2 < 200; ++p) W[p + 2] = W[p] * (p + 1.0) / (p + 2.0);
  double sum = 0.0;
  double term = 1.0;  // (2u)^m / m!
  for (int m = 1; m + 1 < 200; ++m) {
    term *= 2.0 * u / m;
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;
    sum += sign * term * (W[m - 1] - 2.0 * W[m + 1]);
  }
  return sum;
}

}  // namespace

TEST_SUITE("flux") {
  TEST_CASE("flux integral against the Wallis series") {
    for (double u : {0.1, 0.5, 1.0, 2.1, 4.639}) {
      CAPTURE(u);
      CHECK(flux_integral(u) == doctest::Approx(flux_integral_series(u)).epsilon(1e-11));
    }
    CHECK(flux_integral(0.0) == 0.0);
  }

  TEST_CASE("flux rhs depends on kappa and R only through kappa R") {
    for (double c : {0.5, 3.0, 40.0}) {
      CHECK(flux_rhs(1.8e5 * c, 2.5e-5 / c, kAlpha) ==
            doctest::Approx(flux_rhs(1.8e5, 2.5e-5, kAlpha)).epsilon(1e-14));
    }
    CHECK(flux_rhs(1.8e5, 2.5e-5, kAlpha) ==
          doctest::Approx(kAlpha * kAlpha / (2.0 * kPi) * flux_integral_series(4.5)).epsilon(1e-11));
  }

  TEST_CASE("constraint has no solution below the threshold kappa") {
    // F(u)/u <= 0.765, so R = alpha^2 F(kappa R) / 2 pi needs kappa >= 2 pi / (0.765 alpha^2).
    CHECK_THROWS_AS(solve_R_given_kappa(1e5), NumericalError);
  }

  TEST_CASE("solutions satisfy the constraint") {
    for (double kappa : {1.8e5, 2e5, 3e5}) {
      CAPTURE(kappa);
      const auto s = solve_R_given_kappa(kappa);
      CHECK(s.kappa == kappa);
      CHECK(std::abs(s.residual) <= 1e-12 * s.R);
      CHECK(std::abs(s.R - flux_rhs(kappa, s.R, kAlpha)) <= 1e-12 * s.R);
      // Upper branch: past the peak of F(u)/u.
      CHECK(kappa * s.R > 2.1);
    }
    CHECK(solve_R_given_kappa(1.8e5).R == doctest::Approx(2.57e-5).epsilon(0.05));
  }

  TEST_CASE("upper branch radius grows with kappa") {
    double prev = solve_R_given_kappa(1.6e5).R;
    for (double kappa : {1.8e5, 2.2e5, 3e5, 5e5}) {
      const double R = solve_R_given_kappa(kappa).R;
      CHECK(R > prev);
      prev = R;
    }
  }

  TEST_CASE("joint tuning lands on the constraint near the expected point") {
    const auto t = tune_bltp(kAlpha, 0.0);
    CHECK(t.flux.kappa >= 1.7e5);
    CHECK(t.flux.kappa <= 1.9e5);
    CHECK(t.flux.R >= 2.4e-5);
    CHECK(t.flux.R <= 2.7e-5);
    CHECK(std::abs(t.flux.residual) <= 1e-12 * t.flux.R);
    CHECK(std::abs(t.minimum.v_star) <= 1e-8);
    CHECK(t.minimum.r_star > 5e-6);
    CHECK(t.minimum.r_star < 5e-5);
    CHECK(t.u == doctest::Approx(t.flux.kappa * t.flux.R).epsilon(1e-14));
  }

  TEST_CASE("invalid arguments") {
    CHECK_THROWS_AS(flux_integral(-1.0), DomainError);
    CHECK_THROWS_AS(flux_rhs(0.0, 1e-5, kAlpha), DomainError);
    CHECK_THROWS_AS(solve_R_given_kappa(-1.0), DomainError);
    CHECK_THROWS_AS(tune_bltp(kAlpha, 0.0, {6.0, 3.0}), DomainError);
  }
}
