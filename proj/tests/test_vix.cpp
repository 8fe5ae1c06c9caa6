#include <doctest.h>

#include <cmath>
#include <limits>

#include "fattail/errors.hpp"
#include "fattail/vix.hpp"
#include "test_util.hpp"

using namespace fattail;

namespace {

StripResult default_strip() {
    return variance_strip_value(1.0, 0.2, 30.0 / 365.0, 0.3, 3.0, 0.005);
}

} // namespace

TEST_CASE("variance strip replicates implied variance") {
    const StripResult r = default_strip();
    CHECK(r.variance == rel(0.040050694064243712, 1e-10));
    CHECK(!r.tolerance_warning);
    // 1% accuracy against sigma^2 = 0.04 at the default step.
    CHECK(std::abs(r.variance - 0.04) / 0.04 <
          0.01);
    CHECK(std::abs(r.variance - 0.04) / 0.04 ==
          rel(0.0012673516060936543, 1e-6));

    SUBCASE("halving the step quarters-ish the error") {
        const StripResult fine =
            variance_strip_value(1.0, 0.2, 30.0 / 365.0, 0.3, 3.0, 0.0025);
        CHECK(fine.variance == rel(0.040012673587348238, 1e-10));
        CHECK(std::abs(fine.variance - 0.04) / 0.04 < 0.001);
    }
    SUBCASE("strike bookkeeping") {
        REQUIRE(r.strip.strikes.size() == 541);
        REQUIRE(r.strip.weights.size() == 541);
        REQUIRE(r.strip.kinds.size() == 541);
        int puts = 0, calls = 0, both = 0;
        for (char k : r.strip.kinds) {
            if (k == 'p') ++puts;
            else if (k == 'c') ++calls;
            else ++both;
        }
        CHECK(puts == 140);
        CHECK(calls == 400);
        CHECK(both == 1);
        // Uniform grid: every weight is step / K^2.
        CHECK(r.strip.strikes.front() == rel(0.3, 1e-12));
        CHECK(r.strip.strikes.back() == rel(3.0, 1e-9));
        CHECK(r.strip.weights.front() == rel(0.005 / 0.09, 1e-12));
        const double kmid = r.strip.strikes[200];
        CHECK(r.strip.weights[200] == rel(0.005 / (kmid * kmid), 1e-12));
        // Puts below the forward, calls above, the ATM strike marked 'b'.
        CHECK(r.strip.kinds[139] == 'p');
        CHECK(r.strip.kinds[140] == 'b');
        CHECK(r.strip.kinds[141] == 'c');
    }
}

TEST_CASE("strip warns when the wings are clipped or the grid is coarse") {
    CHECK(variance_strip_value(1.0, 0.2, 30.0 / 365.0, 0.5, 3.0, 0.005)
              .tolerance_warning);
    CHECK(variance_strip_value(1.0, 0.2, 30.0 / 365.0, 0.3, 2.0, 0.005)
              .tolerance_warning);
    CHECK(variance_strip_value(1.0, 0.2, 30.0 / 365.0, 0.3, 3.0, 0.02)
              .tolerance_warning);
}

TEST_CASE("strip input validation") {
    const double T = 30.0 / 365.0;
    CHECK_THROWS_AS(variance_strip_value(0.0, 0.2, T, 0.3, 3.0, 0.005),
                    invalid_parameter);
    CHECK_THROWS_AS(variance_strip_value(1.0, 0.0, T, 0.3, 3.0, 0.005),
                    invalid_parameter);
    CHECK_THROWS_AS(variance_strip_value(1.0, 0.2, 0.0, 0.3, 3.0, 0.005),
                    invalid_parameter);
    CHECK_THROWS_AS(variance_strip_value(1.0, 0.2, T, 3.0, 0.3, 0.005),
                    invalid_parameter);
    CHECK_THROWS_AS(variance_strip_value(1.0, 0.2, T, 0.0, 3.0, 0.005),
                    invalid_parameter);
    CHECK_THROWS_AS(variance_strip_value(1.0, 0.2, T, 0.3, 3.0, 0.0),
                    invalid_parameter);
    // Range must straddle the forward.
    CHECK_THROWS_AS(variance_strip_value(1.0, 0.2, T, 1.1, 3.0, 0.005),
                    invalid_parameter);
    CHECK_THROWS_AS(variance_strip_value(1.0, 0.2, T, 0.3, 0.9, 0.005),
                    invalid_parameter);
    // Step so wide only two strikes fit.
    CHECK_THROWS_AS(variance_strip_value(1.0, 0.2, T, 0.3, 3.0, 2.0),
                    invalid_parameter);
}

TEST_CASE("vol convexity arithmetic") {
    SUBCASE("two-episode demo") {
        const ConvexityDemo d = convexity_demo({{4.0, 15.0}, 10.0});
        CHECK(d.arithmetic_mean == 9.5);
        CHECK(d.rms == rel(10.977249200050075, 1e-12));
        CHECK(d.variance_pnl == rel(20.5, 1e-12));
        // The short-vol trader breaks even on the mean yet loses in
        // variance terms: rms above mean is the whole point.
        CHECK(d.rms > d.arithmetic_mean);
    }
    SUBCASE("constant episodes have rms equal to mean") {
        const ConvexityDemo d = convexity_demo({{7.0, 7.0, 7.0}, 7.0});
        CHECK(d.arithmetic_mean == rel(7.0, 1e-15));
        CHECK(d.rms == rel(7.0, 1e-15));
        CHECK(std::abs(d.variance_pnl) <= 1e-12);
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(convexity_demo({{}, 10.0}), invalid_parameter);
        CHECK_THROWS_AS(convexity_demo({{4.0, -1.0}, 10.0}),
                        invalid_parameter);
        CHECK_THROWS_AS(convexity_demo({{4.0, 15.0}, -1.0}),
                        invalid_parameter);
    }
}

TEST_CASE("tail puts vs vix futures across a crash") {
    ScenarioPath path;
    path.periods = {{0.0, 0.15}, {-0.30, 0.60}};
    const ProxyDivergence d = proxy_divergence_scenario(path);
    REQUIRE(d.tail_option_pnl.size() == 1);
    REQUIRE(d.vix_roll_pnl.size() == 1);
    CHECK(d.tail_option_pnl[0] == rel(11.491530625705876, 1e-9));
    CHECK(d.vix_roll_pnl[0] == rel(0.445, 1e-12));
    CHECK(d.tail_option_total == rel(d.tail_option_pnl[0], 1e-15));
    CHECK(d.premium_spent_total == rel(0.001, 1e-15));
    // The convex instrument dwarfs the linear one in the crash.
    CHECK(d.tail_option_total > 20.0 * d.vix_roll_total);

    SUBCASE("defaults spelled out") {
        const ProxyDivergence e =
            proxy_divergence_scenario(path, -3.0, 0.001, 0.005, 1.0 / 12.0);
        CHECK(e.tail_option_pnl[0] == d.tail_option_pnl[0]);
        CHECK(e.vix_roll_pnl[0] == d.vix_roll_pnl[0]);
    }
}

TEST_CASE("tail puts bleed the premium in quiet markets") {
    ScenarioPath path;
    path.periods = {{0.0, 0.15}, {0.0, 0.15}, {0.01, 0.15}};
    const ProxyDivergence d = proxy_divergence_scenario(path);
    REQUIRE(d.tail_option_pnl.size() == 2);
    // Puts expire worthless: exactly minus the budget each roll.
    CHECK(d.tail_option_pnl[0] == -0.001);
    CHECK(d.tail_option_pnl[1] == -0.001);
    CHECK(d.tail_option_total == rel(-0.002, 1e-15));
    // The futures bleed the contango.
    CHECK(d.vix_roll_pnl[0] == rel(-0.005, 1e-15));
    CHECK(d.vix_roll_total == rel(-0.01, 1e-15));
    CHECK(d.premium_spent_total == rel(0.002, 1e-15));
}

TEST_CASE("proxy scenario validation") {
    ScenarioPath ok;
    ok.periods = {{0.0, 0.15}, {-0.30, 0.60}};
    ScenarioPath one;
    one.periods = {{0.0, 0.15}};
    CHECK_THROWS_AS(proxy_divergence_scenario(one), invalid_parameter);
    CHECK_THROWS_AS(proxy_divergence_scenario(ok, 3.0), invalid_parameter);
    CHECK_THROWS_AS(proxy_divergence_scenario(ok, -3.0, 0.0),
                    invalid_parameter);
    CHECK_THROWS_AS(proxy_divergence_scenario(ok, -3.0, 0.001, 0.005, 0.0),
                    invalid_parameter);
    CHECK_THROWS_AS(
        proxy_divergence_scenario(
            ok, -3.0, 0.001, std::numeric_limits<double>::infinity()),
        invalid_parameter);
    ScenarioPath badvol;
    badvol.periods = {{0.0, 0.15}, {0.0, -0.2}, {0.0, 0.15}};
    CHECK_THROWS_WITH_AS(proxy_divergence_scenario(badvol),
                         "scenario period 2: implied vol must be strictly "
                         "positive",
                         invalid_parameter);
}
