#pragma once

#include <cmath>

namespace fattail {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSqrt2 = 1.414213562373095048801688724209698079;
inline constexpr double kSqrt2Pi = 2.506628274631000502415765284811045253;

inline double norm_pdf(double x) {
    return std::exp(-0.5 * x * x) / kSqrt2Pi;
}

// Complementary-error-function form stays accurate deep in the tails where
// 1 - Phi(x) would round to 0 long before the mass is actually negligible.
inline double norm_cdf(double x) {
    return 0.5 * std::erfc(-x / kSqrt2);
}

inline double norm_sf(double x) {
    return 0.5 * std::erfc(x / kSqrt2);
}

// log B(a, b); the beta function itself overflows for large arguments.
inline double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

} // namespace fattail
