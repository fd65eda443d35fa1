#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"
#include "psring/reproduce.hpp"

using namespace psring;

TEST_SUITE("reproduce") {
  TEST_CASE("tampered ring coefficient fails the tuning criterion by name") {
    ReproduceOptions opts;
    opts.ring_coefficient = 0.4959783;
    const auto report = run_acceptance(opts);
    const auto summary = report.summary();
    REQUIRE(summary.size() == 10);
    CHECK_FALSE(summary[3].pass);
    CHECK_FALSE(report.all_pass());
    std::ostringstream out;
    print_summary(out, report);
    CHECK(out.str().find("criterion 4 FAIL ML ring tuning") != std::string::npos);
  }

  TEST_CASE("report rows are complete") {
    const auto report = run_acceptance();
    for (int id = 1; id <= 10; ++id) {
      bool seen = false;
      for (const auto& r : report.rows) seen = seen || r.criterion == id;
      CAPTURE(id);
      CHECK(seen);
    }
    for (const auto& r : report.rows) {
      if (std::isfinite(r.reference)) {
        CHECK(r.delta() == r.computed - r.reference);
      }
    }
    // Criteria that do not depend on the ring coefficient hold.
    const auto s = report.summary();
    CHECK(s[0].pass);
    CHECK(s[1].pass);
    CHECK(s[2].pass);
    CHECK(s[8].pass);
  }
}
