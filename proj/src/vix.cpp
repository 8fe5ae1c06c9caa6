#include "fattail/vix.hpp"

#include <cmath>
#include <string>

#include "fattail/errors.hpp"
#include "fattail/pricing.hpp"

namespace fattail {

StripResult variance_strip_value(double spot, double sigma, double maturity,
                                 double strike_lo, double strike_hi,
                                 double strike_step) {
    if (!(spot > 0.0) || !(sigma > 0.0) || !(maturity > 0.0))
        throw invalid_parameter("strip needs positive spot, sigma, maturity");
    if (!(strike_lo > 0.0) || !(strike_hi > strike_lo))
        throw invalid_parameter("strip needs 0 < strike_lo < strike_hi");
    if (!(strike_step > 0.0))
        throw invalid_parameter("strike step must be strictly positive");
    const double forward = spot; // zero-rate convention throughout
    if (!(strike_lo < forward) || !(strike_hi > forward))
        throw invalid_parameter("strike range must bracket the forward");

    const auto n = static_cast<long>(
        std::floor((strike_hi - strike_lo) / strike_step + 1e-9));
    if (n < 2) throw invalid_parameter("strip needs at least three strikes");

    Strip strip;
    for (long i = 0; i <= n; ++i) {
        const double k = strike_lo + double(i) * strike_step;
        // Interior strikes take the half-distance between neighbors and the
        // ends are one-sided; on a uniform grid both equal the step.
        strip.strikes.push_back(k);
        strip.weights.push_back(strike_step / (k * k));
        if (std::abs(k - forward) <= 1e-9 * forward)
            strip.kinds.push_back('b');
        else
            strip.kinds.push_back(k < forward ? 'p' : 'c');
    }

    double total = 0.0;
    for (std::size_t i = 0; i < strip.strikes.size(); ++i) {
        const double k = strip.strikes[i];
        double q;
        switch (strip.kinds[i]) {
            case 'p':
                q = bs_price(OptionSpec::put(spot, k, maturity), sigma);
                break;
            case 'c':
                q = bs_price(OptionSpec::call(spot, k, maturity), sigma);
                break;
            default:
                q = 0.5 * (bs_price(OptionSpec::put(spot, k, maturity), sigma) +
                           bs_price(OptionSpec::call(spot, k, maturity), sigma));
                break;
        }
        total += strip.weights[i] * q;
    }

    StripResult res;
    res.variance = 2.0 / maturity * total;
    res.tolerance_warning = strike_lo > 0.3 * spot || strike_hi < 3.0 * spot ||
                            strike_step > 0.01 * spot;
    res.strip = std::move(strip);
    return res;
}

ConvexityDemo convexity_demo(const VolEpisodes& episodes) {
    if (episodes.levels.empty())
        throw invalid_parameter("convexity demo needs at least one vol episode");
    if (!(episodes.entry_level >= 0.0))
        throw invalid_parameter("entry level must be nonnegative");
    double sum = 0.0, sum_sq = 0.0;
    for (double v : episodes.levels) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw invalid_parameter("vol episodes must be finite and nonnegative");
        sum += v;
        sum_sq += v * v;
    }
    const double n = double(episodes.levels.size());
    ConvexityDemo demo;
    demo.arithmetic_mean = sum / n;
    demo.rms = std::sqrt(sum_sq / n);
    demo.variance_pnl = sum_sq / n - episodes.entry_level * episodes.entry_level;
    return demo;
}

ProxyDivergence proxy_divergence_scenario(const ScenarioPath& scenario,
                                          double put_n_std,
                                          double premium_budget,
                                          double contango,
                                          double period_years) {
    if (scenario.periods.size() < 2)
        throw invalid_parameter("proxy divergence needs at least two periods");
    if (!(put_n_std < 0.0))
        throw invalid_parameter("put_n_std must be negative (OTM put)");
    if (!(premium_budget > 0.0))
        throw invalid_parameter("premium budget must be strictly positive");
    if (!(period_years > 0.0))
        throw invalid_parameter("period length must be strictly positive");
    if (!std::isfinite(contango))
        throw invalid_parameter("contango must be finite");

    ProxyDivergence out;
    out.tail_option_total = 0.0;
    out.vix_roll_total = 0.0;
    out.premium_spent_total = 0.0;
    for (std::size_t i = 0; i + 1 < scenario.periods.size(); ++i) {
        const double vol = scenario.periods[i].implied_vol;
        if (!(vol > 0.0))
            throw invalid_parameter("scenario period " + std::to_string(i + 1) +
                                    ": implied vol must be strictly positive");
        const double next_ret = scenario.periods[i + 1].equity_return;
        const double next_vol = scenario.periods[i + 1].implied_vol;

        const double strike =
            std::exp(put_n_std * vol * std::sqrt(period_years));
        const double put_px =
            bs_price(OptionSpec::put(1.0, strike, period_years), vol);
        const double units = premium_budget / put_px;
        const double settle = std::max(strike - (1.0 + next_ret), 0.0);
        const double tail = units * settle - premium_budget;

        const double futures = next_vol - vol - contango;

        out.tail_option_pnl.push_back(tail);
        out.vix_roll_pnl.push_back(futures);
        out.tail_option_total += tail;
        out.vix_roll_total += futures;
        out.premium_spent_total += premium_budget;
    }
    return out;
}

} // namespace fattail
