#include "fattail/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "fattail/errors.hpp"
#include "fattail/math.hpp"
#include "fattail/quadrature.hpp"

namespace fattail {
namespace {

// Present value of the parity intrinsic: what an ITM premium is reduced by
// before the credit rule is applied. Zero for OTM legs.
double parity_intrinsic(const OptionSpec& o) {
    const double kd = o.strike * std::exp(-o.rate * o.maturity);
    switch (o.kind) {
        case OptionKind::Call: return std::max(o.spot - kd, 0.0);
        case OptionKind::Put: return std::max(kd - o.spot, 0.0);
        case OptionKind::Straddle: return std::abs(o.spot - kd);
    }
    return 0.0;
}

Leg make_leg(const OptionSpec& o, double quantity, double vol) {
    return {o, quantity, vol, quantity * bs_price(o, vol)};
}

Package finish_package(std::vector<Leg> legs, double spot) {
    Package pkg;
    pkg.legs = std::move(legs);
    pkg.inception_spot = spot;
    double cash = 0.0, adjusted = 0.0;
    for (const auto& l : pkg.legs) {
        cash -= l.inception_premium;
        adjusted -= l.quantity *
                    (bs_price(l.option, l.inception_vol) - parity_intrinsic(l.option));
    }
    pkg.net_cash_flow = cash;
    pkg.credit_rule_cash = adjusted;
    pkg.credit_rule_satisfied = adjusted >= -1e-12;
    return pkg;
}

// Lognormal terminal density of S_T at r=0 (martingale drift).
double terminal_density(double spot, double sigma, double maturity, double s) {
    if (s <= 0.0) return 0.0;
    const double st = sigma * std::sqrt(maturity);
    const double z = (std::log(s / spot) + 0.5 * st * st) / st;
    return norm_pdf(z) / (s * st);
}

} // namespace

Package build_backspread(double spot, double sigma, double maturity,
                         double put_strike, double call_strike,
                         double otm_quantity,
                         std::optional<double> atm_quantity) {
    if (!(otm_quantity >= 0.0))
        throw invalid_parameter("backspread OTM quantity must be nonnegative");
    const OptionSpec put = OptionSpec::put(spot, put_strike, maturity);
    const OptionSpec call = OptionSpec::call(spot, call_strike, maturity);
    const OptionSpec strad = OptionSpec::straddle(spot, spot, maturity);

    const double wing_tv =
        otm_quantity * ((bs_price(put, sigma) - parity_intrinsic(put)) +
                        (bs_price(call, sigma) - parity_intrinsic(call)));
    const double strad_tv = bs_price(strad, sigma) - parity_intrinsic(strad);
    const double min_atm = wing_tv / strad_tv;

    double q;
    if (atm_quantity) {
        if (!(*atm_quantity >= 0.0))
            throw invalid_parameter("backspread ATM quantity must be nonnegative");
        q = *atm_quantity;
        if (q * strad_tv - wing_tv < -1e-12)
            throw credit_rule_violation(
                "credit rule violated: short ATM quantity " +
                    std::to_string(q) + " is below the minimum " +
                    std::to_string(min_atm) + " needed for nonnegative cash",
                min_atm);
    } else {
        q = min_atm; // credit-rule boundary: zero adjusted net cash
    }

    std::vector<Leg> legs;
    legs.push_back(make_leg(put, otm_quantity, sigma));
    legs.push_back(make_leg(call, otm_quantity, sigma));
    legs.push_back(make_leg(strad, -q, sigma));
    return finish_package(std::move(legs), spot);
}

Package build_calendar(double spot, double sigma, double strike,
                       double long_amount, double long_maturity,
                       double short_maturity, double short_ratio) {
    if (long_amount < 0.0)
        throw invalid_parameter("calendar long amount must be nonnegative");
    if (!(short_maturity > 0.0) || !(long_maturity > short_maturity))
        throw invalid_parameter(
            "calendar needs 0 < short maturity < long maturity");
    if (!(short_ratio >= 0.0))
        throw invalid_parameter("calendar short ratio must be nonnegative");
    const OptionSpec long_call = OptionSpec::call(spot, strike, long_maturity);
    const OptionSpec short_call = OptionSpec::call(spot, strike, short_maturity);
    std::vector<Leg> legs;
    legs.push_back(make_leg(long_call, long_amount, sigma));
    legs.push_back(make_leg(short_call, -short_ratio * long_amount, sigma));
    return finish_package(std::move(legs), spot);
}

double package_value(const Package& pkg, double sigma, double spot,
                     double time_elapsed) {
    if (!(time_elapsed >= 0.0))
        throw invalid_parameter("time_elapsed must be nonnegative");
    double v = 0.0;
    for (const auto& l : pkg.legs) {
        const double remaining = l.option.maturity - time_elapsed;
        if (remaining <= 0.0) {
            v += l.quantity * l.option.intrinsic(spot);
        } else {
            OptionSpec o = l.option;
            o.maturity = remaining;
            o.spot = spot;
            v += l.quantity * bs_price(o, sigma);
        }
    }
    return v;
}

double modified_vega(const Package& pkg, double sigma,
                     double reference_maturity, double exponent) {
    if (!(reference_maturity > 0.0))
        throw invalid_parameter("reference maturity must be strictly positive");
    double mv = 0.0;
    for (const auto& l : pkg.legs) {
        const double w =
            std::pow(reference_maturity / l.option.maturity, exponent);
        mv += l.quantity * greeks(l.option, sigma).vega * w;
    }
    return mv;
}

double gross_vega(const Package& pkg, double sigma) {
    double gv = 0.0;
    for (const auto& l : pkg.legs)
        gv += std::abs(l.quantity) * greeks(l.option, sigma).vega;
    return gv;
}

double solve_neutral_ratio(const Package& pkg, std::size_t free_leg,
                           double sigma, double reference_maturity,
                           double exponent) {
    if (free_leg >= pkg.legs.size())
        throw invalid_parameter("free leg index out of range");
    double fixed = 0.0;
    double unit = 0.0;
    for (std::size_t i = 0; i < pkg.legs.size(); ++i) {
        const Leg& l = pkg.legs[i];
        const double w =
            std::pow(reference_maturity / l.option.maturity, exponent);
        const double leg_mv = greeks(l.option, sigma).vega * w;
        if (i == free_leg) {
            const double sign = l.quantity < 0.0 ? -1.0 : 1.0;
            unit = sign * leg_mv;
        } else {
            fixed += l.quantity * leg_mv;
        }
    }
    if (std::abs(unit) < 1e-300)
        throw structure_not_found(
            "free leg has no vega; modified vega cannot be neutralized");
    return -fixed / unit;
}

double fourth_moment_pnl(const Package& pkg, double sigma_base,
                         const MixtureSpec& mix, bool variance_matched) {
    if (!(sigma_base > 0.0))
        throw invalid_parameter("sigma_base must be strictly positive");
    mix.validate();
    if (pkg.legs.empty()) return 0.0;
    const MixtureSpec m = variance_matched ? mix.variance_matched() : mix;

    double horizon = pkg.legs.front().option.maturity;
    for (const auto& l : pkg.legs)
        horizon = std::min(horizon, l.option.maturity);

    const double spot = pkg.inception_spot;
    const auto value_at_horizon = [&](double s) {
        double v = 0.0;
        for (const auto& l : pkg.legs) {
            const double remaining = l.option.maturity - horizon;
            if (remaining <= 1e-12) {
                v += l.quantity * l.option.intrinsic(s);
            } else {
                OptionSpec o = l.option;
                o.maturity = remaining;
                o.spot = s;
                v += l.quantity * bs_price(o, sigma_base);
            }
        }
        return v;
    };
    const auto density_gap = [&](double s) {
        double q = 0.0;
        for (const auto& c : m.components)
            q += c.weight *
                 terminal_density(spot, sigma_base * c.multiplier, horizon, s);
        return q - terminal_density(spot, sigma_base, horizon, s);
    };

    double max_mult = 1.0;
    for (const auto& c : m.components) max_mult = std::max(max_mult, c.multiplier);
    const double span = 13.5 * sigma_base * max_mult * std::sqrt(horizon);
    const double lo = spot * std::exp(-span);
    const double hi = spot * std::exp(span);

    // Split at the terminal payoff kinks (strikes of legs expiring at the
    // horizon) so every integration piece is smooth.
    std::set<double> cuts{lo, hi};
    for (const auto& l : pkg.legs)
        if (l.option.maturity - horizon <= 1e-12 && l.option.strike > lo &&
            l.option.strike < hi)
            cuts.insert(l.option.strike);

    double total_qty = 0.0;
    for (const auto& l : pkg.legs) total_qty += std::abs(l.quantity);
    const double tol = 1e-10 * spot * std::max(1.0, total_qty);

    double pnl = 0.0;
    double prev = 0.0;
    bool have_prev = false;
    for (double c : cuts) {
        if (have_prev)
            pnl += integrate(
                [&](double s) { return value_at_horizon(s) * density_gap(s); },
                prev, c, tol, 60);
        prev = c;
        have_prev = true;
    }
    return pnl;
}

double vol_of_vol_exposure(const Package& pkg, double sigma_base,
                           const MixtureSpec& sigma_distribution) {
    sigma_distribution.validate();
    if (!(sigma_base > 0.0))
        throw invalid_parameter("sigma_base must be strictly positive");
    const double spot = pkg.inception_spot;
    double expected = 0.0;
    for (const auto& c : sigma_distribution.components)
        expected += c.weight *
                    package_value(pkg, sigma_base * c.multiplier, spot, 0.0);
    const double at_mean = package_value(
        pkg, sigma_base * sigma_distribution.mean_multiplier(), spot, 0.0);
    return expected - at_mean;
}

PayoffProfile payoff_profile(const Package& pkg, double sigma, double spot_lo,
                             double spot_hi, int n_spots, double sigma_lo,
                             double sigma_hi, int n_sigmas) {
    if (!(spot_lo < spot_hi) || n_spots < 2)
        throw invalid_parameter("payoff profile needs spot_lo < spot_hi, n >= 2");
    if (!(sigma_lo < sigma_hi) || n_sigmas < 2)
        throw invalid_parameter("payoff profile needs sigma_lo < sigma_hi, n >= 2");
    double horizon = pkg.legs.empty() ? 0.0 : pkg.legs.front().option.maturity;
    for (const auto& l : pkg.legs)
        horizon = std::min(horizon, l.option.maturity);

    PayoffProfile prof;
    for (int i = 0; i < n_spots; ++i) {
        const double s =
            spot_lo + (spot_hi - spot_lo) * i / double(n_spots - 1);
        prof.spot_grid.push_back(s);
        prof.pnl_at_horizon.push_back(package_value(pkg, sigma, s, horizon) +
                                      pkg.net_cash_flow);
    }
    for (int i = 0; i < n_sigmas; ++i) {
        const double v =
            sigma_lo + (sigma_hi - sigma_lo) * i / double(n_sigmas - 1);
        prof.value_vs_sigma.emplace_back(
            v, package_value(pkg, v, pkg.inception_spot, 0.0));
    }
    return prof;
}

Package negate(const Package& pkg) {
    Package out = pkg;
    for (auto& l : out.legs) {
        l.quantity = -l.quantity;
        l.inception_premium = -l.inception_premium;
    }
    out.net_cash_flow = -pkg.net_cash_flow;
    out.credit_rule_cash = -pkg.credit_rule_cash;
    out.credit_rule_satisfied = out.credit_rule_cash >= -1e-12;
    return out;
}

} // namespace fattail
