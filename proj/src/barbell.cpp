#include "fattail/barbell.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fattail/errors.hpp"
#include "fattail/pricing.hpp"

namespace fattail {
namespace {

void validate_spec(const PortfolioSpec& spec) {
    if (!(spec.numeraire_fraction >= 0.0) || !(spec.equity_fraction >= 0.0))
        throw invalid_parameter("allocation fractions must be nonnegative");
    if (spec.numeraire_fraction + spec.equity_fraction > 1.0 + 1e-12)
        throw invalid_parameter("allocation fractions must sum to at most 1");
    if (!(spec.tail_budget_per_period >= 0.0) ||
        spec.tail_budget_per_period > 0.05)
        throw invalid_parameter("tail budget must lie in [0, 0.05] per period");
    if (!(spec.put_n_std < 0.0))
        throw invalid_parameter("put_n_std must be negative (OTM put)");
    if (!(spec.put_maturity > 0.0))
        throw invalid_parameter("put maturity must be strictly positive");
}

void validate_path(const ScenarioPath& path) {
    if (path.periods.empty())
        throw invalid_parameter("scenario path must have at least one period");
    for (std::size_t i = 0; i < path.periods.size(); ++i) {
        const auto& p = path.periods[i];
        if (!(p.implied_vol > 0.0))
            throw invalid_parameter("scenario period " + std::to_string(i + 1) +
                                    ": implied vol must be strictly positive");
        if (!(p.equity_return > -1.0))
            throw invalid_parameter("scenario period " + std::to_string(i + 1) +
                                    ": equity return must exceed -100%");
    }
}

} // namespace

WealthSeries run_strategy(const PortfolioSpec& spec, const ScenarioPath& path,
                          BarbellMode mode) {
    validate_spec(spec);
    validate_path(path);

    const double equity0 =
        mode == BarbellMode::Sidelined ? 0.0 : spec.equity_fraction;
    double equity = equity0;
    double numeraire = 1.0 - equity0; // unallocated remainder idles here

    WealthSeries series;
    series.wealth.push_back(1.0);
    for (const auto& period : path.periods) {
        double premium = 0.0;
        double claim = 0.0;
        if (mode == BarbellMode::Insured && spec.tail_budget_per_period > 0.0) {
            const double wealth_in = numeraire + equity;
            premium = spec.tail_budget_per_period * wealth_in;
            const double vol = period.implied_vol;
            const double strike = std::exp(spec.put_n_std * vol *
                                           std::sqrt(spec.put_maturity));
            const double put_px = bs_price(
                OptionSpec::put(1.0, strike, spec.put_maturity), vol);
            const double units = premium / put_px;
            claim =
                units * std::max(strike - (1.0 + period.equity_return), 0.0);
        }
        equity *= 1.0 + period.equity_return;
        numeraire += claim - premium;
        series.premiums_paid += premium;
        series.claims_received += claim;
        series.wealth.push_back(numeraire + equity);
    }
    return series;
}

double max_drawdown(const std::vector<double>& wealth) {
    if (wealth.empty())
        throw invalid_parameter("drawdown needs a nonempty wealth series");
    double peak = wealth.front();
    double dd = 0.0;
    for (double w : wealth) {
        peak = std::max(peak, w);
        if (peak > 0.0) dd = std::max(dd, (peak - w) / peak);
    }
    return dd;
}

DollarComparison compare_dollar_for_dollar(const PortfolioSpec& spec,
                                           const ScenarioPath& path) {
    DollarComparison cmp;
    for (BarbellMode mode : {BarbellMode::Insured, BarbellMode::Uninsured,
                             BarbellMode::Sidelined}) {
        ModeReport report;
        report.mode = mode;
        report.series = run_strategy(spec, path, mode);
        report.terminal_wealth = report.series.wealth.back();
        report.max_drawdown = max_drawdown(report.series.wealth);
        switch (mode) {
            case BarbellMode::Insured: cmp.insured = std::move(report); break;
            case BarbellMode::Uninsured:
                cmp.uninsured = std::move(report);
                break;
            case BarbellMode::Sidelined:
                cmp.sidelined = std::move(report);
                break;
        }
    }
    return cmp;
}

} // namespace fattail
