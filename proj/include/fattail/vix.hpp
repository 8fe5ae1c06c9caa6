#pragma once

#include <vector>

#include "fattail/scenario.hpp"

namespace fattail {

// 1/K^2-weighted OTM option portfolio across strikes; the variance
// replication strip. weights are the interval weights dK/K^2 (interior
// strikes take half-distance dK, the ends one-sided); kind flips from put to
// call at the forward.
struct Strip {
    std::vector<double> strikes;
    std::vector<double> weights;
    std::vector<char> kinds; // 'p' below the forward, 'c' above, 'b' at it
};

struct StripResult {
    double variance;        // annualized, (2/T) * sum w * Q(K)
    Strip strip;
    bool tolerance_warning; // range narrower than [0.3,3]x spot or step > 1%
};

StripResult variance_strip_value(double spot, double sigma, double maturity,
                                 double strike_lo, double strike_hi,
                                 double strike_step);

// Volatility episodes in percent (e.g. entry 10 = 10%).
struct VolEpisodes {
    std::vector<double> levels;
    double entry_level;
};

struct ConvexityDemo {
    double arithmetic_mean;
    double rms;
    double variance_pnl; // mean(levels^2) - entry^2, variance points
};

ConvexityDemo convexity_demo(const VolEpisodes& episodes);

// Rolls between consecutive scenario periods: deep-OTM puts bought with a
// fixed premium budget and settled at intrinsic vs a stylized VIX-futures
// position bought at vol + contango and settled at next-period vol.
struct ProxyDivergence {
    std::vector<double> tail_option_pnl; // one entry per roll
    std::vector<double> vix_roll_pnl;
    double tail_option_total;
    double vix_roll_total;
    double premium_spent_total;
};

ProxyDivergence proxy_divergence_scenario(const ScenarioPath& scenario,
                                          double put_n_std = -3.0,
                                          double premium_budget = 0.001,
                                          double contango = 0.005,
                                          double period_years = 1.0 / 12.0);

} // namespace fattail
