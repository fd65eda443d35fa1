#include <cmath>
#include <numbers>

#include "doctest.h"
#include "psring/errors.hpp"
#include "psring/optimize.hpp"

using namespace psring;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("optimize") {
  TEST_CASE("parabola") {
    const auto m = minimize_scalar([](double x) { return (x - 3.0) * (x - 3.0); }, {0.0, 1.0, 10.0});
    CHECK(m.r_star == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(m.v_star <= 1e-16);
    CHECK(m.kind == MinimumKind::local_min);
    CHECK(m.bracket.lo <= m.r_star);
    CHECK(m.r_star <= m.bracket.hi);
  }

  TEST_CASE("quartic with a flat bottom") {
    const auto m = minimize_scalar([](double x) { return std::pow(x - 1.5, 4) + 2.0; },
                                   {1.0, 1.4, 3.0}, 1e-10);
    CHECK(m.r_star == doctest::Approx(1.5).epsilon(1e-3));
    CHECK(m.v_star == doctest::Approx(2.0).epsilon(1e-14));
  }

  TEST_CASE("invalid brackets") {
    const auto f = [](double x) { return x * x; };
    CHECK_THROWS_AS(minimize_scalar(f, {1.0, 0.0, 2.0}), DomainError);
    CHECK_THROWS_AS(minimize_scalar(f, {1.0, 2.0, 3.0}), DomainError);
    CHECK_THROWS_AS(minimize_scalar(f, {-1.0, 0.1, 1.0}, 0.0), DomainError);
  }

  TEST_CASE("non-finite objective") {
    const auto f = [](double x) { return x > 0.5 ? std::nan("") : (x - 0.4) * (x - 0.4); };
    CHECK_THROWS_AS(minimize_scalar(f, {0.0, 0.4, 1.0}), NonFiniteValue);
  }

  TEST_CASE("all minima of cos on [1, 20]") {
    const auto minima = find_local_minima([](double x) { return std::cos(x); }, 1.0, 20.0, 50);
    REQUIRE(minima.size() == 3);
    CHECK(minima[0].r_star == doctest::Approx(kPi).epsilon(1e-8));
    CHECK(minima[1].r_star == doctest::Approx(3.0 * kPi).epsilon(1e-8));
    CHECK(minima[2].r_star == doctest::Approx(5.0 * kPi).epsilon(1e-8));
    // Equal values: the smallest r is the global one.
    CHECK(minima[0].kind == MinimumKind::global_min);
    CHECK(minima[1].kind == MinimumKind::local_min);
    CHECK(minima[2].kind == MinimumKind::local_min);
  }

  TEST_CASE("global label goes to the deepest minimum") {
    const auto f = [](double x) { return std::cos(x) - 0.01 * x; };
    const auto minima = find_local_minima(f, 1.0, 20.0, 50);
    REQUIRE(minima.size() == 3);
    CHECK(minima[2].kind == MinimumKind::global_min);
    int globals = 0;
    for (const auto& m : minima) globals += m.kind == MinimumKind::global_min;
    CHECK(globals == 1);
  }

  TEST_CASE("monotone objective has no minima") {
    CHECK(find_local_minima([](double x) { return 1.0 / x; }, 1e-3, 1e3, 20).empty());
    CHECK(find_local_minima([](double x) { return std::log(x); }, 1e-3, 1e3, 20).empty());
  }

  TEST_CASE("serial and parallel scans agree") {
    const auto f = [](double x) { return std::sin(3.0 * std::log(x)); };
    const auto a = find_local_minima(f, 1e-3, 1e3, 40, {1e-10, true});
    const auto b = find_local_minima(f, 1e-3, 1e3, 40, {1e-10, false});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].r_star == b[i].r_star);
      CHECK(a[i].v_star == b[i].v_star);
    }
  }

  TEST_CASE("scan arguments") {
    const auto f = [](double x) { return x; };
    CHECK_THROWS_AS(find_local_minima(f, 0.0, 1.0, 20), DomainError);
    CHECK_THROWS_AS(find_local_minima(f, 1.0, 10.0, 5), DomainError);
  }

  TEST_CASE("root of x^2 - 2") {
    const double r = find_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-15);
    CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(find_root([](double x) { return x - 1.0; }, 1.0, 3.0, 1e-12) == 1.0);
  }

  TEST_CASE("root needs a sign change") {
    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12), DomainError);
    CHECK_THROWS_AS(find_root([](double x) { return x; }, 1.0, -1.0, 1e-12), DomainError);
  }
}
