#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "fattail/pricing.hpp"

namespace fattail {

inline constexpr double kDefaultReferenceMaturity = 30.0 / 365.0;

struct Leg {
    OptionSpec option;
    double quantity;          // signed: + long, - short
    double inception_vol;
    double inception_premium; // quantity * bs_price(option, inception_vol)
};

struct Package {
    std::vector<Leg> legs;
    double inception_spot = 0.0;
    double net_cash_flow = 0.0;      // minus summed premiums; positive = credit
    double credit_rule_cash = 0.0;   // same, with ITM premiums net of parity intrinsic
    bool credit_rule_satisfied = false;
};

struct PayoffProfile {
    std::vector<double> spot_grid;
    std::vector<double> pnl_at_horizon; // terminal value + inception cash flow
    std::vector<std::pair<double, double>> value_vs_sigma;
};

// Long otm_quantity puts below + otm_quantity calls above, short an ATM
// straddle. Without atm_quantity the straddle size is solved for zero net
// cash (the credit rule's boundary). The credit test counts ITM premiums
// net of the present value of intrinsic (put-call parity); violating it
// throws credit_rule_violation carrying the minimum compliant ATM quantity.
Package build_backspread(double spot, double sigma, double maturity,
                         double put_strike, double call_strike,
                         double otm_quantity,
                         std::optional<double> atm_quantity = std::nullopt);

// Long `long_amount` calls at long_maturity, short short_ratio*long_amount
// calls at short_maturity, same strike. long_amount 0 builds the degenerate
// all-zero package; negative throws invalid_parameter.
Package build_calendar(double spot, double sigma, double strike,
                       double long_amount,
                       double long_maturity = 60.0 / 365.0,
                       double short_maturity = 20.0 / 365.0,
                       double short_ratio = 0.8);

// Marks every leg at (spot, sigma) after time_elapsed years; legs at or past
// expiry settle at intrinsic.
double package_value(const Package& pkg, double sigma, double spot,
                     double time_elapsed);

// Maturity-weighted vega: sum of leg vega * (T_ref / T_leg)^exponent.
double modified_vega(const Package& pkg, double sigma,
                     double reference_maturity = kDefaultReferenceMaturity,
                     double exponent = 0.5);

// Sum of |quantity| * per-unit leg vega, unweighted; denominator for the
// near-flatness checks.
double gross_vega(const Package& pkg, double sigma);

// Quantity on legs[free_leg] that zeroes the package's modified vega. The
// sign of the template quantity is preserved; the returned value is the
// magnitude. Linear in the quantity, so the solve is exact. A zero-vega free
// leg throws structure_not_found.
double solve_neutral_ratio(const Package& pkg, std::size_t free_leg,
                           double sigma,
                           double reference_maturity = kDefaultReferenceMaturity,
                           double exponent = 0.5);

// Expected terminal P&L (payoff at the shortest leg's expiry; unexpired legs
// marked at sigma_base) under the mixture-fattened terminal distribution
// minus under the base lognormal. With variance_matched the mixture
// multipliers are rescaled by (sum w_i m_i^2)^(-1/2) first.
double fourth_moment_pnl(const Package& pkg, double sigma_base,
                         const MixtureSpec& mix, bool variance_matched);

// E_sigma[package_value(sigma)] - package_value(E[sigma]) for the sigma
// distribution {sigma_base * m_i with weight w_i}; positive = long
// vol-of-vol.
double vol_of_vol_exposure(const Package& pkg, double sigma_base,
                           const MixtureSpec& sigma_distribution);

PayoffProfile payoff_profile(const Package& pkg, double sigma, double spot_lo,
                             double spot_hi, int n_spots, double sigma_lo,
                             double sigma_hi, int n_sigmas);

// All leg quantities (and cash flows) negated; used by the antisymmetry
// checks.
Package negate(const Package& pkg);

} // namespace fattail
