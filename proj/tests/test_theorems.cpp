#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "theorem_suites.hpp"

// Randomized structural checks over generated market histories. Each suite
// encodes one equivalence or ordering fact about the transition system; a
// single failure prints the offending case.
TEST_CASE("randomized suites") {
    std::vector<suites::SuiteResult> results = suites::run_theorem_suites(400);
    REQUIRE(!results.empty());

    for (const suites::SuiteResult& r : results) {
        CAPTURE(r.name);
        INFO("first failure: " << r.first_failure);
        CHECK(r.failures == 0);
        CHECK(r.cases > 0);
        // generators are tuned so most draws are usable
        CHECK(r.skipped * 2 < r.cases);
    }
}
