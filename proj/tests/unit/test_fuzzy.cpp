#include <doctest.h>

#include <cmath>
#include <random>

#include "lanepre/fuzzy.hpp"

#include "common/oracles.hpp"

using namespace lanepre;
using fuzzy::MembershipFunction;

TEST_CASE("membership evaluation at the worked points") {
    const auto tri = MembershipFunction::triangle("t", 0, 5, 10);
    CHECK(tri.evaluate(5.0) == 1.0);
    CHECK(tri.evaluate(7.5) == 0.5);
    CHECK(tri.evaluate(2.5) == 0.5);
    CHECK(tri.evaluate(-1.0) == 0.0);
    CHECK(tri.evaluate(10.0) == 0.0);

    const auto shoulder = MembershipFunction::open_right("s", 30, 40);
    CHECK(shoulder.evaluate(35.0) == 0.5);
    CHECK(shoulder.evaluate(40.0) == 1.0);
    CHECK(shoulder.evaluate(1e9) == 1.0); // stays 1 past the plateau
    CHECK(shoulder.evaluate(30.0) == 0.0);

    const auto left = MembershipFunction::open_left("l", 2, 5);
    CHECK(left.evaluate(0.0) == 1.0);
    CHECK(left.evaluate(2.0) == 1.0);
    CHECK(left.evaluate(3.5) == 0.5);
    CHECK(left.evaluate(5.0) == 0.0);
}

TEST_CASE("membership validation rejects malformed shapes") {
    MembershipFunction bad{"bad", 5, 3, 6, 7};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    MembershipFunction unnamed{"", 0, 1, 2, 3};
    CHECK_THROWS_AS(unnamed.validate(), std::invalid_argument);
    CHECK_NOTHROW(MembershipFunction::open_left("ok", 2, 5).validate());
    CHECK_NOTHROW(MembershipFunction::open_right("ok", 30, 40).validate());
}

TEST_CASE("default system validates and rejects a broken rulebase") {
    auto sys = fuzzy::default_fuzzy_system();
    CHECK_NOTHROW(sys.validate());
    auto missing_rule = sys;
    missing_rule.rules.pop_back();
    CHECK_THROWS_AS(missing_rule.validate(), std::invalid_argument);
    auto unknown_output = sys;
    unknown_output.rules[0].then_output = "nonsense";
    CHECK_THROWS_AS(unknown_output.validate(), std::invalid_argument);
}

TEST_CASE("controller output at the landmark counts") {
    const auto sys = fuzzy::default_fuzzy_system();
    CHECK(std::abs(fuzzy::fis_delta(0.0, sys) - (-1.0)) <= 1e-6);
    CHECK(fuzzy::fis_delta(15.0, sys) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(std::abs(fuzzy::fis_delta(60.0, sys) - 4.0) <= 1e-6);
}

TEST_CASE("controller matches the independent centroid oracle on a dense grid") {
    const auto sys = fuzzy::default_fuzzy_system();
    for (double n = 0.0; n <= 80.0; n += 0.5)
        CHECK(std::abs(fuzzy::fis_delta(n, sys) - oracles::fis_delta(n)) <= 1e-6);
}

TEST_CASE("controller output range and signs follow the rulebase") {
    const auto sys = fuzzy::default_fuzzy_system();
    for (double n = 0.0; n <= 120.0; n += 0.25) {
        const double d = fuzzy::fis_delta(n, sys);
        CHECK(d >= -1.5);
        CHECK(d <= 4.5);
        if (n <= 2.0) CHECK(d < 0.0);                   // fully "too few"
        if (n >= 10.0 && n <= 20.0) CHECK(std::abs(d) <= 0.25); // "good" core
        if (n >= 40.0) CHECK(std::abs(d - 4.0) <= 1e-6);        // fully "too many"
        if (n >= 25.0 && n <= 30.0) CHECK(d > 0.0);     // only "many" fires
    }
}

TEST_CASE("controller is continuous in the line count") {
    const auto sys = fuzzy::default_fuzzy_system();
    double prev = fuzzy::fis_delta(0.0, sys);
    for (double n = 0.01; n <= 80.0; n += 0.01) {
        const double d = fuzzy::fis_delta(n, sys);
        CHECK(std::abs(d - prev) <= 0.1);
        prev = d;
    }
}

TEST_CASE("fis rejects negative counts and handles a zero-area aggregate") {
    const auto sys = fuzzy::default_fuzzy_system();
    CHECK_THROWS_AS(fuzzy::fis_delta(-1.0, sys), std::invalid_argument);
    // A system whose only membership cannot fire at the probed count.
    fuzzy::FuzzySystem gap;
    gap.inputs = {MembershipFunction::triangle("band", 10, 15, 20)};
    gap.outputs = {MembershipFunction::triangle("out", -1, 0, 1)};
    gap.rules = {{"band", "out"}};
    CHECK(fuzzy::fis_delta(50.0, gap) == 0.0);
}

TEST_CASE("tune applies the worked updates") {
    const auto sys = fuzzy::default_fuzzy_system();
    fuzzy::TunerState s;
    s.th_high = 1.0;
    const auto up = fuzzy::tune(s, 60, sys);
    CHECK(std::abs(up.th_high - 5.0) <= 1e-6);
    CHECK(up.frame_index == 1);
    CHECK(up.last_line_count == 60);
    CHECK(up.last_delta == doctest::Approx(4.0));

    const auto floor = fuzzy::tune(s, 0, sys);
    CHECK(floor.th_high == 1.0); // clamped at the minimum

    fuzzy::TunerState mid;
    mid.th_high = 50.0;
    CHECK(fuzzy::tune(mid, 15, sys).th_high == 50.0);
}

TEST_CASE("tune never leaves the clamp range") {
    const auto sys = fuzzy::default_fuzzy_system();
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> counts(0, 1000);
    fuzzy::TunerState s;
    s.th_high = 1.0;
    for (int i = 0; i < 2000; ++i) {
        s = fuzzy::tune(s, counts(rng), sys);
        CHECK(s.th_high >= fuzzy::kThresholdMin);
        CHECK(s.th_high <= fuzzy::kThresholdMax);
    }
    // Pin to the ceiling with persistent "too many".
    for (int i = 0; i < 500; ++i) s = fuzzy::tune(s, 1000, sys);
    CHECK(s.th_high == fuzzy::kThresholdMax);
}
