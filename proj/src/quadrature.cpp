#include "fattail/quadrature.hpp"

#include <cmath>

#include "fattail/errors.hpp"

namespace fattail {
namespace {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss rule
// (QUADPACK qk15 constants).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469};

struct Estimate {
    double kronrod;
    double err;
};

Estimate gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double f1 = f(c - x);
        const double f2 = f(c + x);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    return {resk * h, std::abs((resk - resg) * h)};
}

// A wide window can park every first-pass node where a concentrated
// integrand is numerically zero, making Gauss and Kronrod agree there is
// nothing to integrate; a few unconditional splits defeat that.
constexpr int kForcedSplits = 3;

double integrate_rec(const std::function<double(double)>& f, double a,
                     double b, double tol, int depth, int forced, bool& ok) {
    if (forced > 0 && depth > 0) {
        const double m = 0.5 * (a + b);
        return integrate_rec(f, a, m, 0.5 * tol, depth - 1, forced - 1, ok) +
               integrate_rec(f, m, b, 0.5 * tol, depth - 1, forced - 1, ok);
    }
    const Estimate e = gk15(f, a, b);
    if (e.err <= tol || e.err <= 1e-16 * std::abs(e.kronrod)) return e.kronrod;
    if (depth <= 0) {
        ok = false;
        return e.kronrod;
    }
    const double m = 0.5 * (a + b);
    return integrate_rec(f, a, m, 0.5 * tol, depth - 1, 0, ok) +
           integrate_rec(f, m, b, 0.5 * tol, depth - 1, 0, ok);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_depth) {
    if (!(a <= b)) throw invalid_parameter("integrate: bounds must satisfy a <= b");
    if (a == b) return 0.0;
    bool ok = true;
    const double v = integrate_rec(f, a, b, abs_tol, max_depth, kForcedSplits, ok);
    if (!ok)
        throw numeric_failure("integrate: tolerance not reached within subdivision budget");
    if (!std::isfinite(v))
        throw numeric_failure("integrate: non-finite result");
    return v;
}

std::vector<std::pair<double, double>> bracket_roots(
    const std::function<double(double)>& f, double lo, double hi, int n) {
    if (!(lo < hi) || n < 1)
        throw invalid_parameter("bracket_roots: need lo < hi and n >= 1");
    std::vector<std::pair<double, double>> out;
    const double step = (hi - lo) / n;
    double x0 = lo;
    double f0 = f(x0);
    for (int i = 1; i <= n; ++i) {
        const double x1 = (i == n) ? hi : lo + i * step;
        const double f1 = f(x1);
        if (f0 != 0.0 && f1 != 0.0 && std::signbit(f0) != std::signbit(f1))
            out.emplace_back(x0, x1);
        x0 = x1;
        f0 = f1;
    }
    return out;
}

double bisect(const std::function<double(double)>& f, double a, double b,
              double x_tol) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (std::signbit(fa) == std::signbit(fb))
        throw invalid_parameter("bisect: endpoints do not bracket a sign change");
    for (int i = 0; i < 200 && (b - a) > x_tol; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if (std::signbit(fm) == std::signbit(fa)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

} // namespace fattail
