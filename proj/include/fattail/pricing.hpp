#pragma once

#include "fattail/distributions.hpp"

namespace fattail {

enum class OptionKind { Call, Put, Straddle };

struct OptionSpec {
    OptionKind kind = OptionKind::Call;
    double strike = 1.0;
    double maturity = 1.0; // years
    double spot = 1.0;
    double rate = 0.0; // continuously compounded

    static OptionSpec call(double spot, double strike, double maturity,
                           double rate = 0.0);
    static OptionSpec put(double spot, double strike, double maturity,
                          double rate = 0.0);
    static OptionSpec straddle(double spot, double strike, double maturity,
                               double rate = 0.0);

    double intrinsic(double spot_now) const;
};

// Black-Scholes price. Deep-OTM tails are evaluated through erfc so 20-STD
// strikes produce a representable number instead of silently rounding to 0.
double bs_price(const OptionSpec& spec, double sigma);

struct Greeks {
    double price;
    double delta;
    double gamma;
    double vega;  // dV/dsigma
    double volga; // d2V/dsigma2
};

Greeks greeks(const OptionSpec& spec, double sigma);

// K = spot * exp(n_std * sigma * sqrt(T)): log-moneyness "n standard
// deviations from the money".
double otm_strike(double spot, double sigma, double maturity, double n_std);

// Sum of w_i * bs_price(spec, sigma_base * m_i).
double mixture_price(const OptionSpec& spec, double sigma_base,
                     const MixtureSpec& mix);

// mixture_price(ATM) - bs_price(ATM) for a sigma-mean-preserving mixture.
// Negative for any nondegenerate mixture: the ATM price is concave in sigma.
double atm_fattening_quiz(double spot, double maturity, double sigma,
                          const MixtureSpec& mix);

struct MultiplierResult {
    double strike;
    double base_price;
    double bumped_price;
    double multiplier; // +inf when the base price underflowed
    bool underflow = false;
};

// Price ratio of the n_std-OTM call at sigma*vol_factor vs sigma.
MultiplierResult otm_multiplier(double n_std, double vol_factor, double spot,
                                double maturity, double sigma);

struct StraddleCheck {
    double straddle_price;
    double conditional_moment; // E|S_T - K| by quadrature
};

// At r=0 the straddle equals the conditional first moment E|S_T - K|
// exactly; both routes are returned so the agreement is checkable.
StraddleCheck straddle_conditional_moment_check(double spot, double strike,
                                                double maturity, double sigma);

} // namespace fattail
