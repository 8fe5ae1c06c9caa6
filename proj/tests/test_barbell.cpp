#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "fattail/barbell.hpp"
#include "fattail/errors.hpp"
#include "fattail/pricing.hpp"
#include "fattail/scenario.hpp"
#include "test_util.hpp"

using namespace fattail;

namespace {

ScenarioPath from_text(const std::string& text) {
    std::istringstream in(text);
    return parse_scenario(in);
}

PortfolioSpec crash_capture_spec() {
    PortfolioSpec spec; // default 90/10 with a 0.5% budget
    spec.put_n_std = -3.0;
    return spec;
}

} // namespace

TEST_CASE("scenario parsing") {
    SUBCASE("happy path with comments and blanks") {
        const ScenarioPath p = from_text(
            "# quarterly path\n"
            "0.05, 0.2\n"
            "\n"
            "-0.1,0.3   # drawdown quarter\n"
            "  0.02 ,  0.25\n");
        REQUIRE(p.periods.size() == 3);
        CHECK(p.periods[0].equity_return == 0.05);
        CHECK(p.periods[0].implied_vol == 0.2);
        CHECK(p.periods[1].equity_return == -0.1);
        CHECK(p.periods[1].implied_vol == 0.3);
        CHECK(p.periods[2].equity_return == 0.02);
        CHECK(p.periods[2].implied_vol == 0.25);
    }
    SUBCASE("malformed lines name their line number") {
        CHECK_THROWS_WITH_AS(
            from_text("0.05 0.2\n"),
            "scenario line 1: expected exactly two fields 'return, "
            "implied_vol'",
            invalid_parameter);
        CHECK_THROWS_WITH_AS(
            from_text("0.05, 0.2\n0.1, 0.2, 0.3\n"),
            "scenario line 2: expected exactly two fields 'return, "
            "implied_vol'",
            invalid_parameter);
        CHECK_THROWS_WITH_AS(from_text("abc, 0.2\n"),
                             "scenario line 1: fields must be numeric",
                             invalid_parameter);
        CHECK_THROWS_WITH_AS(from_text("0.05x, 0.2\n"),
                             "scenario line 1: fields must be numeric",
                             invalid_parameter);
        CHECK_THROWS_WITH_AS(
            from_text("# header\n0.05, 0.0\n"),
            "scenario line 2: implied vol must be strictly positive",
            invalid_parameter);
        CHECK_THROWS_WITH_AS(from_text("-1.5, 0.2\n"),
                             "scenario line 1: return must exceed -100%",
                             invalid_parameter);
        CHECK_THROWS_WITH_AS(from_text("# only comments\n\n"),
                             "scenario contains no periods", invalid_parameter);
    }
    SUBCASE("file round trip") {
        const std::string path = "/tmp/fattail_scenario_roundtrip.txt";
        {
            std::ofstream out(path);
            out << "# two periods\n-0.2, 0.4\n0.3, 0.25\n";
        }
        const ScenarioPath p = parse_scenario_file(path);
        REQUIRE(p.periods.size() == 2);
        CHECK(p.periods[0].equity_return == -0.2);
        CHECK(p.periods[1].implied_vol == 0.25);
        CHECK_THROWS_WITH_AS(
            parse_scenario_file("/tmp/does_not_exist_fattail.txt"),
            "cannot open scenario file: /tmp/does_not_exist_fattail.txt",
            invalid_parameter);
    }
    SUBCASE("built-in demo path") {
        const ScenarioPath p = default_demo_path();
        REQUIRE(p.periods.size() == 6);
        CHECK(p.periods[0].equity_return == -0.50);
        CHECK(p.periods[0].implied_vol == 0.20);
        CHECK(p.periods[1].equity_return == 0.20);
        CHECK(p.periods[1].implied_vol == 0.60);
        CHECK(p.periods[5].equity_return == 0.10);
        CHECK(p.periods[5].implied_vol == 0.20);
    }
}

TEST_CASE("max drawdown") {
    CHECK(max_drawdown({1.0, 1.2, 0.6, 0.9, 1.5, 0.75}) == 0.5);
    CHECK(max_drawdown({1.0}) == 0.0);
    CHECK(max_drawdown({1.0, 1.1, 1.2, 1.3}) == 0.0);
    CHECK(max_drawdown({2.0, 1.0}) == 0.5);
    CHECK_THROWS_AS(max_drawdown({}), invalid_parameter);
}

TEST_CASE("uninsured barbell on the demo path") {
    PortfolioSpec spec;
    const WealthSeries s =
        run_strategy(spec, default_demo_path(), BarbellMode::Uninsured);
    const double expected[] = {1.0,  0.95,   0.96,   0.975,
                               0.99, 1.0035, 1.01385};
    REQUIRE(s.wealth.size() == 7);
    for (int i = 0; i < 7; ++i) CHECK(s.wealth[i] == rel(expected[i], 1e-12));
    CHECK(s.premiums_paid == 0.0);
    CHECK(s.claims_received == 0.0);
    CHECK(max_drawdown(s.wealth) == rel(0.05, 1e-12));
}

TEST_CASE("sidelined wealth never moves") {
    PortfolioSpec spec;
    const WealthSeries s =
        run_strategy(spec, default_demo_path(), BarbellMode::Sidelined);
    for (double w : s.wealth) CHECK(w == 1.0);
    CHECK(max_drawdown(s.wealth) == 0.0);
}

TEST_CASE("insured barbell with 5-std puts misses the demo crash") {
    PortfolioSpec spec; // default put_n_std = -5
    const WealthSeries s =
        run_strategy(spec, default_demo_path(), BarbellMode::Insured);
    const double expected[] = {1.0,
                               0.945,
                               0.950275,
                               0.960523625,
                               0.970721006875,
                               0.97936740184062498,
                               0.98482056483142189};
    REQUIRE(s.wealth.size() == 7);
    for (int i = 0; i < 7; ++i) CHECK(s.wealth[i] == rel(expected[i], 1e-12));
    // A -50% crash does not reach a strike five sigmas down, so the
    // insurance never pays and the premiums are pure drag.
    CHECK(s.claims_received == 0.0);
    CHECK(max_drawdown(s.wealth) == rel(0.055, 1e-12));
}

TEST_CASE("insured barbell with 3-std puts captures the crash") {
    const WealthSeries s = run_strategy(crash_capture_spec(),
                                        default_demo_path(),
                                        BarbellMode::Insured);
    const double expected[] = {1.0,
                               5.2740506220947063,
                               5.2576803689842322,
                               5.2463919671393118,
                               5.2351600073036151,
                               5.2224842072670974,
                               5.2067217862307613};
    REQUIRE(s.wealth.size() == 7);
    for (int i = 0; i < 7; ++i) CHECK(s.wealth[i] == rel(expected[i], 1e-10));
    CHECK(s.premiums_paid == rel(0.1361788358639448, 1e-10));
    CHECK(s.claims_received == rel(4.329050622094706, 1e-10));
    CHECK(max_drawdown(s.wealth) == rel(0.012766057948303093, 1e-9));

    SUBCASE("dominates the uninsured drawdown") {
        const WealthSeries u = run_strategy(
            crash_capture_spec(), default_demo_path(), BarbellMode::Uninsured);
        CHECK(max_drawdown(s.wealth) < max_drawdown(u.wealth));
        CHECK(s.wealth.back() > u.wealth.back());
    }
}

TEST_CASE("per-period wealth accounting is conservative") {
    // Re-derive the recurrence with the library's own pricing; every period
    // must satisfy wealth_out = wealth_in + equity pnl + claim - premium.
    const PortfolioSpec spec = crash_capture_spec();
    const ScenarioPath path = default_demo_path();
    const WealthSeries s = run_strategy(spec, path, BarbellMode::Insured);

    double equity = spec.equity_fraction;
    double numeraire = 1.0 - spec.equity_fraction;
    REQUIRE(s.wealth.size() == path.periods.size() + 1);
    CHECK(s.wealth[0] == 1.0);
    for (std::size_t t = 0; t < path.periods.size(); ++t) {
        const ScenarioPeriod& p = path.periods[t];
        const double wealth_in = numeraire + equity;
        const double premium = spec.tail_budget_per_period * wealth_in;
        const double strike =
            std::exp(spec.put_n_std * p.implied_vol *
                     std::sqrt(spec.put_maturity));
        const double put_px = bs_price(
            OptionSpec::put(1.0, strike, spec.put_maturity), p.implied_vol);
        const double claim = premium / put_px *
                             std::max(strike - (1.0 + p.equity_return), 0.0);
        const double equity_pnl = equity * p.equity_return;
        equity *= 1.0 + p.equity_return;
        numeraire += claim - premium;
        CHECK(std::abs(s.wealth[t + 1] - (numeraire + equity)) <= 1e-12);
        CHECK(std::abs(s.wealth[t + 1] - wealth_in - equity_pnl - claim +
                       premium) <= 1e-12);
    }
}

TEST_CASE("a zero budget makes insurance a no-op") {
    PortfolioSpec spec;
    spec.tail_budget_per_period = 0.0;
    const ScenarioPath path = default_demo_path();
    const WealthSeries ins = run_strategy(spec, path, BarbellMode::Insured);
    const WealthSeries unins =
        run_strategy(spec, path, BarbellMode::Uninsured);
    REQUIRE(ins.wealth.size() == unins.wealth.size());
    for (std::size_t i = 0; i < ins.wealth.size(); ++i)
        CHECK(ins.wealth[i] == unins.wealth[i]);
    CHECK(ins.premiums_paid == 0.0);
}

TEST_CASE("without claims the insured lag is exactly the premium bill") {
    PortfolioSpec spec; // 5-std puts: never in the money on this path
    ScenarioPath path;
    path.periods = {{0.05, 0.2}, {0.05, 0.2}, {0.05, 0.2}, {0.05, 0.2}};
    const WealthSeries ins = run_strategy(spec, path, BarbellMode::Insured);
    const WealthSeries unins =
        run_strategy(spec, path, BarbellMode::Uninsured);
    CHECK(ins.claims_received == 0.0);
    CHECK(std::abs((unins.wealth.back() - ins.wealth.back()) -
                   ins.premiums_paid) <= 1e-12);
}

TEST_CASE("dollar-for-dollar comparison is self-consistent") {
    const DollarComparison cmp =
        compare_dollar_for_dollar(crash_capture_spec(), default_demo_path());
    CHECK(cmp.insured.mode == BarbellMode::Insured);
    CHECK(cmp.uninsured.mode == BarbellMode::Uninsured);
    CHECK(cmp.sidelined.mode == BarbellMode::Sidelined);
    for (const ModeReport* r :
         {&cmp.insured, &cmp.uninsured, &cmp.sidelined}) {
        CHECK(r->terminal_wealth == r->series.wealth.back());
        CHECK(r->max_drawdown == max_drawdown(r->series.wealth));
    }
    CHECK(cmp.sidelined.terminal_wealth == 1.0);
    CHECK(cmp.insured.max_drawdown < cmp.uninsured.max_drawdown);
}

TEST_CASE("portfolio spec validation") {
    const ScenarioPath path = default_demo_path();
    PortfolioSpec spec;

    spec.tail_budget_per_period = 0.06;
    CHECK_THROWS_AS(run_strategy(spec, path, BarbellMode::Insured),
                    invalid_parameter);
    spec.tail_budget_per_period = -0.001;
    CHECK_THROWS_AS(run_strategy(spec, path, BarbellMode::Insured),
                    invalid_parameter);

    spec = PortfolioSpec{};
    spec.put_n_std = 0.0;
    CHECK_THROWS_AS(run_strategy(spec, path, BarbellMode::Insured),
                    invalid_parameter);
    spec.put_n_std = 2.0;
    CHECK_THROWS_AS(run_strategy(spec, path, BarbellMode::Insured),
                    invalid_parameter);

    spec = PortfolioSpec{};
    spec.put_maturity = 0.0;
    CHECK_THROWS_AS(run_strategy(spec, path, BarbellMode::Insured),
                    invalid_parameter);

    spec = PortfolioSpec{};
    spec.equity_fraction = -0.1;
    CHECK_THROWS_AS(run_strategy(spec, path, BarbellMode::Insured),
                    invalid_parameter);
    spec.equity_fraction = 0.2;
    spec.numeraire_fraction = 0.9;
    CHECK_THROWS_AS(run_strategy(spec, path, BarbellMode::Insured),
                    invalid_parameter);
}

TEST_CASE("scenario path validation inside the runner") {
    PortfolioSpec spec;
    ScenarioPath empty;
    CHECK_THROWS_WITH_AS(run_strategy(spec, empty, BarbellMode::Uninsured),
                         "scenario path must have at least one period",
                         invalid_parameter);
    ScenarioPath badvol;
    badvol.periods = {{0.05, 0.2}, {0.05, 0.0}};
    CHECK_THROWS_WITH_AS(
        run_strategy(spec, badvol, BarbellMode::Uninsured),
        "scenario period 2: implied vol must be strictly positive",
        invalid_parameter);
    ScenarioPath badret;
    badret.periods = {{-1.0, 0.2}};
    CHECK_THROWS_WITH_AS(run_strategy(spec, badret, BarbellMode::Uninsured),
                         "scenario period 1: equity return must exceed -100%",
                         invalid_parameter);
}
