#include <doctest.h>

#include "gtmcmc/validate.hpp"

using namespace gtmcmc;

TEST_CASE("validation suite passes on a small case budget") {
    auto results = run_validation(7, 20);
    REQUIRE(results.size() == 5);
    for (const auto& r : results) {
        INFO(r.name << ": " << r.detail);
        CHECK(r.passed);
    }
}

TEST_CASE("corrupting the cov curve trips exactly the cov property") {
    auto results = run_validation(7, 60, true);
    bool saw_failure = false;
    for (const auto& r : results) {
        if (r.name == "cov_monotonicity") {
            CHECK_FALSE(r.passed);
            saw_failure = true;
        } else {
            CHECK(r.passed);
        }
    }
    CHECK(saw_failure);
}
