#include "fattail/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fattail/errors.hpp"
#include "fattail/math.hpp"
#include "fattail/quadrature.hpp"

namespace fattail {
namespace {

void validate_spec(const OptionSpec& spec) {
    if (!(spec.strike > 0.0) || !(spec.maturity > 0.0) || !(spec.spot > 0.0))
        throw invalid_parameter(
            "option strike, maturity and spot must be strictly positive");
    if (!std::isfinite(spec.rate))
        throw invalid_parameter("option rate must be finite");
}

void validate_sigma(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw invalid_parameter("sigma must be strictly positive, got " +
                                std::to_string(sigma));
}

struct D12 {
    double d1, d2, sqrt_t, disc;
};

D12 d_values(const OptionSpec& spec, double sigma) {
    const double st = sigma * std::sqrt(spec.maturity);
    const double d1 =
        (std::log(spec.spot / spec.strike) +
         (spec.rate + 0.5 * sigma * sigma) * spec.maturity) / st;
    return {d1, d1 - st, std::sqrt(spec.maturity),
            std::exp(-spec.rate * spec.maturity)};
}

double call_price(const OptionSpec& spec, const D12& d) {
    return spec.spot * norm_cdf(d.d1) - spec.strike * d.disc * norm_cdf(d.d2);
}

double put_price(const OptionSpec& spec, const D12& d) {
    return spec.strike * d.disc * norm_cdf(-d.d2) - spec.spot * norm_cdf(-d.d1);
}

} // namespace

OptionSpec OptionSpec::call(double spot, double strike, double maturity,
                            double rate) {
    OptionSpec s{OptionKind::Call, strike, maturity, spot, rate};
    validate_spec(s);
    return s;
}

OptionSpec OptionSpec::put(double spot, double strike, double maturity,
                           double rate) {
    OptionSpec s{OptionKind::Put, strike, maturity, spot, rate};
    validate_spec(s);
    return s;
}

OptionSpec OptionSpec::straddle(double spot, double strike, double maturity,
                                double rate) {
    OptionSpec s{OptionKind::Straddle, strike, maturity, spot, rate};
    validate_spec(s);
    return s;
}

double OptionSpec::intrinsic(double spot_now) const {
    switch (kind) {
        case OptionKind::Call: return std::max(spot_now - strike, 0.0);
        case OptionKind::Put: return std::max(strike - spot_now, 0.0);
        case OptionKind::Straddle: return std::abs(spot_now - strike);
    }
    return 0.0;
}

double bs_price(const OptionSpec& spec, double sigma) {
    validate_spec(spec);
    validate_sigma(sigma);
    const D12 d = d_values(spec, sigma);
    switch (spec.kind) {
        case OptionKind::Call: return call_price(spec, d);
        case OptionKind::Put: return put_price(spec, d);
        case OptionKind::Straddle: return call_price(spec, d) + put_price(spec, d);
    }
    throw invalid_parameter("unknown option kind");
}

Greeks greeks(const OptionSpec& spec, double sigma) {
    validate_spec(spec);
    validate_sigma(sigma);
    const D12 d = d_values(spec, sigma);
    const double pdf1 = norm_pdf(d.d1);
    const double unit_vega = spec.spot * pdf1 * d.sqrt_t;
    const double unit_gamma = pdf1 / (spec.spot * sigma * d.sqrt_t);
    const double unit_volga = unit_vega * d.d1 * d.d2 / sigma;
    Greeks g{};
    switch (spec.kind) {
        case OptionKind::Call:
            g = {call_price(spec, d), norm_cdf(d.d1), unit_gamma, unit_vega,
                 unit_volga};
            break;
        case OptionKind::Put:
            g = {put_price(spec, d), norm_cdf(d.d1) - 1.0, unit_gamma,
                 unit_vega, unit_volga};
            break;
        case OptionKind::Straddle:
            g = {call_price(spec, d) + put_price(spec, d),
                 2.0 * norm_cdf(d.d1) - 1.0, 2.0 * unit_gamma, 2.0 * unit_vega,
                 2.0 * unit_volga};
            break;
    }
    return g;
}

double otm_strike(double spot, double sigma, double maturity, double n_std) {
    if (!(spot > 0.0)) throw invalid_parameter("spot must be strictly positive");
    if (!(sigma > 0.0) || !(maturity > 0.0))
        throw invalid_parameter("sigma and maturity must be strictly positive");
    if (!std::isfinite(n_std)) throw invalid_parameter("n_std must be finite");
    return spot * std::exp(n_std * sigma * std::sqrt(maturity));
}

double mixture_price(const OptionSpec& spec, double sigma_base,
                     const MixtureSpec& mix) {
    validate_sigma(sigma_base);
    mix.validate();
    double p = 0.0;
    for (const auto& c : mix.components)
        p += c.weight * bs_price(spec, sigma_base * c.multiplier);
    return p;
}

double atm_fattening_quiz(double spot, double maturity, double sigma,
                          const MixtureSpec& mix) {
    mix.validate();
    if (std::abs(mix.mean_multiplier() - 1.0) > 1e-9)
        throw invalid_parameter(
            "quiz mixture must preserve the mean sigma (mean multiplier 1)");
    const OptionSpec atm = OptionSpec::call(spot, spot, maturity);
    return mixture_price(atm, sigma, mix) - bs_price(atm, sigma);
}

MultiplierResult otm_multiplier(double n_std, double vol_factor, double spot,
                                double maturity, double sigma) {
    if (!(vol_factor > 0.0))
        throw invalid_parameter("vol_factor must be strictly positive");
    const double strike = otm_strike(spot, sigma, maturity, n_std);
    const OptionSpec call = OptionSpec::call(spot, strike, maturity);
    MultiplierResult r{};
    r.strike = strike;
    r.base_price = bs_price(call, sigma);
    r.bumped_price = bs_price(call, sigma * vol_factor);
    if (r.base_price < 1e-300) {
        r.underflow = true;
        r.multiplier = std::numeric_limits<double>::infinity();
    } else {
        r.multiplier = r.bumped_price / r.base_price;
    }
    return r;
}

StraddleCheck straddle_conditional_moment_check(double spot, double strike,
                                                double maturity, double sigma) {
    const OptionSpec strad = OptionSpec::straddle(spot, strike, maturity);
    validate_sigma(sigma);
    const double st = sigma * std::sqrt(maturity);
    // Terminal spot as a function of the standard normal draw, at r = 0.
    const auto terminal = [&](double z) {
        return spot * std::exp(-0.5 * st * st + st * z);
    };
    // Split at the payoff kink so each piece is smooth.
    const double z_kink = (std::log(strike / spot) + 0.5 * st * st) / st;
    const double zlo = -13.5, zhi = 13.5;
    double moment = 0.0;
    if (z_kink > zlo) {
        const double b = std::min(z_kink, zhi);
        moment += integrate(
            [&](double z) { return (strike - terminal(z)) * norm_pdf(z); },
            zlo, b, 1e-12, 60);
    }
    if (z_kink < zhi) {
        const double a = std::max(z_kink, zlo);
        moment += integrate(
            [&](double z) { return (terminal(z) - strike) * norm_pdf(z); },
            a, zhi, 1e-12, 60);
    }
    return {bs_price(strad, sigma), moment};
}

} // namespace fattail
