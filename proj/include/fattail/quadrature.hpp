#pragma once

#include <functional>
#include <vector>

namespace fattail {

// Adaptive Gauss-Kronrod 7-15 integration on a finite interval.
// Throws numeric_failure when the tolerance cannot be met within the
// subdivision budget.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, int max_depth = 48);

// Scans [lo, hi] with n equal brackets and returns every subinterval whose
// endpoints have strictly opposite signs of f.
std::vector<std::pair<double, double>> bracket_roots(
    const std::function<double(double)>& f, double lo, double hi, int n);

// Plain bisection on a sign-change bracket, refined to |x| tolerance x_tol.
double bisect(const std::function<double(double)>& f, double a, double b,
              double x_tol);

} // namespace fattail
