// Full acceptance gate: runs every suite criterion and prints one line per
// criterion so the result is readable straight from the ctest log.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "facering/acceptance.hpp"

using namespace facering;

TEST_CASE("acceptance suite: every criterion passes") {
  auto results = run_acceptance_suite();
  REQUIRE(results.size() == 10);
  for (const auto& r : results) {
    std::printf("criterion %2d [%s] %-55s (%.1fs) %s\n", r.id,
                r.pass ? "PASS" : "FAIL", r.name.c_str(), r.seconds, r.detail.c_str());
    std::fflush(stdout);
  }
  for (const auto& r : results) {
    INFO("criterion ", r.id, ": ", r.name, " — ", r.detail);
    CHECK(r.pass);
  }
}
