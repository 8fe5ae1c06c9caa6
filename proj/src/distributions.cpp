#include "fattail/distributions.hpp"

#include <cmath>
#include <string>

#include "fattail/errors.hpp"
#include "fattail/math.hpp"
#include "fattail/quadrature.hpp"

namespace fattail {
namespace {

// Above this tail exponent the Student-T is evaluated as a Gaussian: the
// pdf's log1p argument loses all precision long before alpha overflows.
constexpr double kStudentGaussianCutover = 1e7;

void check_scale(double scale) {
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw invalid_parameter("scale must be strictly positive, got " +
                                std::to_string(scale));
}

double gaussian_pdf(double mu, double sigma, double x) {
    const double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * kSqrt2Pi);
}

double student_log_norm(double alpha, double s) {
    return -0.5 * std::log(alpha) - std::log(s) - log_beta(0.5 * alpha, 0.5);
}

double student_pdf(double alpha, double s, double center, double x) {
    if (alpha > kStudentGaussianCutover) return gaussian_pdf(center, s, x);
    const double u = (x - center) / s;
    const double logp = -0.5 * (alpha + 1.0) * std::log1p(u * u / alpha) +
                        student_log_norm(alpha, s);
    return std::exp(logp);
}

double lognormal_pdf(double mu, double sigma, double x) {
    if (x <= 0.0) return 0.0;
    const double z = (std::log(x) - mu) / sigma;
    return std::exp(-0.5 * z * z) / (x * sigma * kSqrt2Pi);
}

struct RawMoments {
    double r1, r2, r3, r4;
    bool has_r2, has_r4;
};

RawMoments raw_moments(const ScaleFamily& f) {
    RawMoments m{0, 0, 0, 0, true, true};
    switch (f.family) {
        case Family::Gaussian: {
            const double mu = f.location, v = f.scale * f.scale;
            m.r1 = mu;
            m.r2 = mu * mu + v;
            m.r3 = mu * mu * mu + 3.0 * mu * v;
            m.r4 = mu * mu * mu * mu + 6.0 * mu * mu * v + 3.0 * v * v;
            return m;
        }
        case Family::StudentT: {
            const double a = f.tail_exponent, s = f.scale, c = f.location;
            if (a > kStudentGaussianCutover)
                return raw_moments(ScaleFamily::gaussian(c, s));
            m.has_r2 = a > 2.0;
            m.has_r4 = a > 4.0;
            const double v = m.has_r2 ? s * s * a / (a - 2.0) : 0.0;
            const double m4c = m.has_r4
                                   ? 3.0 * a * a * s * s * s * s /
                                         ((a - 2.0) * (a - 4.0))
                                   : 0.0;
            m.r1 = c;
            m.r2 = c * c + v;
            m.r3 = c * c * c + 3.0 * c * v;
            m.r4 = c * c * c * c + 6.0 * c * c * v + m4c;
            return m;
        }
        case Family::Lognormal: {
            const double mu = f.location, s2 = f.scale * f.scale;
            m.r1 = std::exp(mu + 0.5 * s2);
            m.r2 = std::exp(2.0 * mu + 2.0 * s2);
            m.r3 = std::exp(3.0 * mu + 4.5 * s2);
            m.r4 = std::exp(4.0 * mu + 8.0 * s2);
            return m;
        }
    }
    throw invalid_parameter("unknown family");
}

Moments moments_from_raw(const RawMoments& rm, int order,
                         const std::string& who) {
    if (order < 1 || order > 4)
        throw invalid_parameter("moments: order must be 1..4");
    Moments out;
    out.mean = rm.r1;
    if (order >= 2) {
        if (!rm.has_r2)
            throw moment_undefined(who + ": variance requires tail exponent > 2");
        out.variance = rm.r2 - rm.r1 * rm.r1;
    }
    if (order >= 4) {
        if (!rm.has_r4)
            throw moment_undefined(who + ": kurtosis requires tail exponent > 4");
        const double m1 = rm.r1;
        const double var = rm.r2 - m1 * m1;
        const double m4c = rm.r4 - 4.0 * rm.r3 * m1 + 6.0 * rm.r2 * m1 * m1 -
                           3.0 * m1 * m1 * m1 * m1;
        out.kurtosis = m4c / (var * var);
    }
    return out;
}

// Integration window for one component, clamped to [lo, hi].
double integrate_component(const ScaleFamily& f,
                           const std::function<double(double)>& g, double lo,
                           double hi) {
    switch (f.family) {
        case Family::Gaussian: {
            const double a = std::max(lo, f.location - 40.0 * f.scale);
            const double b = std::min(hi, f.location + 40.0 * f.scale);
            if (!(a < b)) return 0.0;
            return integrate(
                [&](double x) { return gaussian_pdf(f.location, f.scale, x) * g(x); },
                a, b, 1e-11, 60);
        }
        case Family::Lognormal: {
            // In u = log x the density is Gaussian, so the window is exact.
            const double ulo = lo <= 0.0 ? f.location - 40.0 * f.scale
                                         : std::max(std::log(lo),
                                                    f.location - 40.0 * f.scale);
            const double uhi = std::isinf(hi)
                                   ? f.location + 40.0 * f.scale
                                   : std::min(std::log(hi),
                                              f.location + 40.0 * f.scale);
            if (!(ulo < uhi)) return 0.0;
            return integrate(
                [&](double u) {
                    return gaussian_pdf(f.location, f.scale, u) * g(std::exp(u));
                },
                ulo, uhi, 1e-11, 60);
        }
        case Family::StudentT: {
            if (f.tail_exponent > kStudentGaussianCutover)
                return integrate_component(
                    ScaleFamily::gaussian(f.location, f.scale), g, lo, hi);
            // x = c + s*sqrt(a)*sinh(w) turns the power tail into an
            // exponential one; clamp at |x - c| = 1e9 * s where any
            // existing-moment integrand is far below tolerance.
            const double sa = f.scale * std::sqrt(f.tail_exponent);
            const double wmax = std::asinh(1e9 * f.scale / sa);
            const double wlo = std::isinf(lo) ? -wmax
                                              : std::max(-wmax,
                                                         std::asinh((lo - f.location) / sa));
            const double whi = std::isinf(hi) ? wmax
                                              : std::min(wmax,
                                                         std::asinh((hi - f.location) / sa));
            if (!(wlo < whi)) return 0.0;
            return integrate(
                [&](double w) {
                    const double x = f.location + sa * std::sinh(w);
                    return student_pdf(f.tail_exponent, f.scale, f.location, x) *
                           g(x) * sa * std::cosh(w);
                },
                wlo, whi, 1e-11, 60);
        }
    }
    throw invalid_parameter("unknown family");
}

} // namespace

ScaleFamily ScaleFamily::gaussian(double mu, double sigma) {
    check_scale(sigma);
    return {Family::Gaussian, mu, sigma,
            std::numeric_limits<double>::infinity()};
}

ScaleFamily ScaleFamily::student(double alpha, double s, double center) {
    check_scale(s);
    if (!(alpha > 1.0))
        throw invalid_parameter("Student-T tail exponent must exceed 1, got " +
                                std::to_string(alpha));
    return {Family::StudentT, center, s, alpha};
}

ScaleFamily ScaleFamily::lognormal(double mu, double sigma) {
    check_scale(sigma);
    return {Family::Lognormal, mu, sigma,
            std::numeric_limits<double>::infinity()};
}

ScaleFamily ScaleFamily::with_scale_multiplier(double m) const {
    if (!(m > 0.0))
        throw invalid_parameter("scale multiplier must be strictly positive");
    ScaleFamily out = *this;
    out.scale = scale * m;
    return out;
}

double ScaleFamily::mode() const {
    if (family == Family::Lognormal)
        return std::exp(location - scale * scale);
    return location;
}

MixtureSpec MixtureSpec::two_point(double delta) {
    if (!(delta >= 0.0) || delta >= 1.0)
        throw invalid_parameter("perturbation delta must lie in [0, 1)");
    return {{{0.5, 1.0 - delta}, {0.5, 1.0 + delta}}};
}

MixtureSpec MixtureSpec::single() { return {{{1.0, 1.0}}}; }

double MixtureSpec::mean_multiplier() const {
    double m = 0.0;
    for (const auto& c : components) m += c.weight * c.multiplier;
    return m;
}

MixtureSpec MixtureSpec::variance_matched() const {
    validate();
    double m2 = 0.0;
    for (const auto& c : components) m2 += c.weight * c.multiplier * c.multiplier;
    const double r = 1.0 / std::sqrt(m2);
    MixtureSpec out = *this;
    for (auto& c : out.components) c.multiplier *= r;
    return out;
}

void MixtureSpec::validate() const {
    if (components.empty())
        throw invalid_parameter("mixture must have at least one component");
    double wsum = 0.0;
    for (const auto& c : components) {
        if (!(c.weight > 0.0) || c.weight > 1.0)
            throw invalid_parameter("mixture weights must lie in (0, 1]");
        if (!(c.multiplier > 0.0))
            throw invalid_parameter("mixture multipliers must be strictly positive");
        wsum += c.weight;
    }
    if (std::abs(wsum - 1.0) > 1e-12)
        throw invalid_parameter("mixture weights must sum to 1, got " +
                                std::to_string(wsum));
}

double pdf(const ScaleFamily& f, double x) {
    check_scale(f.scale);
    switch (f.family) {
        case Family::Gaussian:
            return gaussian_pdf(f.location, f.scale, x);
        case Family::StudentT:
            return student_pdf(f.tail_exponent, f.scale, f.location, x);
        case Family::Lognormal:
            return lognormal_pdf(f.location, f.scale, x);
    }
    throw invalid_parameter("unknown family");
}

double perturbed_pdf(const ScaleFamily& f, double delta, double x) {
    if (!(delta >= 0.0) || delta >= 1.0)
        throw invalid_parameter("perturbation delta must lie in [0, 1)");
    if (delta == 0.0) return pdf(f, x);
    return 0.5 * (pdf(f.with_scale_multiplier(1.0 + delta), x) +
                  pdf(f.with_scale_multiplier(1.0 - delta), x));
}

double shifted_perturbed_pdf(const ScaleFamily& f, double delta, double x) {
    if (!(delta >= 0.0))
        throw invalid_parameter("shift delta must be nonnegative");
    return 0.5 * (pdf(f, x + delta) + pdf(f, x - delta));
}

double mixture_pdf(const ScaleFamily& f, const MixtureSpec& mix, double x) {
    mix.validate();
    double p = 0.0;
    for (const auto& c : mix.components)
        p += c.weight * pdf(f.with_scale_multiplier(c.multiplier), x);
    return p;
}

Moments moments(const ScaleFamily& f, int order) {
    return moments_from_raw(raw_moments(f), order, "moments");
}

Moments moments(const ScaleFamily& f, const MixtureSpec& mix, int order) {
    mix.validate();
    RawMoments acc{0, 0, 0, 0, true, true};
    for (const auto& c : mix.components) {
        const RawMoments rm = raw_moments(f.with_scale_multiplier(c.multiplier));
        acc.has_r2 = acc.has_r2 && rm.has_r2;
        acc.has_r4 = acc.has_r4 && rm.has_r4;
        acc.r1 += c.weight * rm.r1;
        acc.r2 += c.weight * rm.r2;
        acc.r3 += c.weight * rm.r3;
        acc.r4 += c.weight * rm.r4;
    }
    return moments_from_raw(acc, order, "mixture moments");
}

std::optional<QuasiViolation> quasiconcavity_check(
    const std::function<double(double)>& density,
    const std::vector<double>& grid) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = i + 1; j < grid.size(); ++j) {
            const double px = density(grid[i]);
            const double py = density(grid[j]);
            const double floor = std::min(px, py);
            for (int k = 1; k <= 9; ++k) {
                const double w = 0.1 * k;
                const double mid = w * grid[i] + (1.0 - w) * grid[j];
                const double pm = density(mid);
                if (pm < floor - 1e-12 * std::max(1.0, floor))
                    return QuasiViolation{grid[i], grid[j], w};
            }
        }
    }
    return std::nullopt;
}

std::optional<QuasiViolation> quasiconcavity_check(
    const ScaleFamily& f, const std::vector<double>& grid) {
    return quasiconcavity_check([&](double x) { return pdf(f, x); }, grid);
}

std::optional<QuasiViolation> quasiconcavity_check(
    const ScaleFamily& f, const MixtureSpec& mix,
    const std::vector<double>& grid) {
    return quasiconcavity_check(
        [&](double x) { return mixture_pdf(f, mix, x); }, grid);
}

double integrate_density(const ScaleFamily& f,
                         const std::function<double(double)>& g, double lo,
                         double hi) {
    if (!(lo < hi)) throw invalid_parameter("integrate_density: need lo < hi");
    return integrate_component(f, g, lo, hi);
}

std::pair<double, double> tunnel_mass(const ScaleFamily& f, double delta,
                                      double lo, double hi) {
    if (!(lo < hi)) throw invalid_parameter("tunnel_mass: need lo < hi");
    if (!(delta >= 0.0) || delta >= 1.0)
        throw invalid_parameter("perturbation delta must lie in [0, 1)");
    const auto one = [](double) { return 1.0; };
    const double base = integrate_component(f, one, lo, hi);
    if (delta == 0.0) return {base, base};
    const double up =
        integrate_component(f.with_scale_multiplier(1.0 + delta), one, lo, hi);
    const double dn =
        integrate_component(f.with_scale_multiplier(1.0 - delta), one, lo, hi);
    return {base, 0.5 * (up + dn)};
}

} // namespace fattail
