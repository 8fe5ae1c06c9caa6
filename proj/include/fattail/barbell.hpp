#pragma once

#include <vector>

#include "fattail/scenario.hpp"

namespace fattail {

// Bimodal allocation: a constant-value numeraire sleeve plus a compounding
// equity sleeve, with a small per-period budget for deep-OTM puts.
struct PortfolioSpec {
    double numeraire_fraction = 0.9;
    double equity_fraction = 0.1;
    double tail_budget_per_period = 0.005; // fraction of wealth, cap 0.05
    double put_n_std = -5.0;
    double put_maturity = 1.0; // period-years
};

enum class BarbellMode { Insured, Uninsured, Sidelined };

struct WealthSeries {
    std::vector<double> wealth; // size = periods + 1, wealth[0] = 1
    double premiums_paid = 0.0;
    double claims_received = 0.0;
};

// Per-period accounting in numeraire units: the numeraire sleeve is constant,
// equity compounds by each period's return, and Insured mode buys one-period
// puts at period-start implied vol (strike exp(n_std * vol * sqrt(T)) on the
// normalized index) settled at intrinsic against 1 + return. Every period
// satisfies wealth_out = wealth_in + equity P&L + settlement - premium.
WealthSeries run_strategy(const PortfolioSpec& spec, const ScenarioPath& path,
                          BarbellMode mode);

struct ModeReport {
    BarbellMode mode;
    WealthSeries series;
    double terminal_wealth;
    double max_drawdown;
};

struct DollarComparison {
    ModeReport insured;
    ModeReport uninsured;
    ModeReport sidelined;
};

DollarComparison compare_dollar_for_dollar(const PortfolioSpec& spec,
                                           const ScenarioPath& path);

double max_drawdown(const std::vector<double>& wealth);

} // namespace fattail
