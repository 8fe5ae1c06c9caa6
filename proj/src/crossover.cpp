#include "fattail/crossover.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fattail/errors.hpp"
#include "fattail/quadrature.hpp"

namespace fattail {
namespace {

// Gaussian crossover coefficients: the zeros of z^4 - 5 z^2 + 2, i.e.
// z^2 = (5 -+ sqrt(17)) / 2.
const double kInnerCoeff = std::sqrt(0.5 * (5.0 - std::sqrt(17.0)));
const double kOuterCoeff = std::sqrt(0.5 * (5.0 + std::sqrt(17.0)));

constexpr double kStudentGaussianCutover = 1e7;

CrossoverSet make_set(double a1, double a2, double a3, double a4, double mode,
                      const ScaleFamily& f) {
    if (!(a1 < a2 && a2 < mode && mode < a3 && a3 < a4))
        throw structure_not_found(
            "crossovers do not satisfy a1 < a2 < mode < a3 < a4");
    return {a1, a2, a3, a4, mode, f};
}

} // namespace

CrossoverSet gaussian_crossovers(double mu, double sigma) {
    const ScaleFamily f = ScaleFamily::gaussian(mu, sigma);
    const double inner = kInnerCoeff * sigma;
    const double outer = kOuterCoeff * sigma;
    return make_set(mu - outer, mu - inner, mu + inner, mu + outer, mu, f);
}

CrossoverSet student_crossovers(double alpha, double s) {
    const ScaleFamily f = ScaleFamily::student(alpha, s);
    if (alpha > kStudentGaussianCutover) {
        CrossoverSet cs = gaussian_crossovers(0.0, s);
        cs.family = f;
        return cs;
    }
    const double disc = std::sqrt((alpha + 1.0) * (17.0 * alpha + 1.0));
    const double denom = 2.0 * (alpha - 1.0);
    const double inner = s * std::sqrt((5.0 * alpha + 1.0 - disc) / denom);
    const double outer = s * std::sqrt((5.0 * alpha + 1.0 + disc) / denom);
    return make_set(-outer, -inner, inner, outer, 0.0, f);
}

CrossoverSet lognormal_crossovers(double mu, double sigma) {
    const ScaleFamily f = ScaleFamily::lognormal(mu, sigma);
    const double inner = kInnerCoeff * sigma;
    const double outer = kOuterCoeff * sigma;
    return make_set(std::exp(mu - outer), std::exp(mu - inner),
                    std::exp(mu + inner), std::exp(mu + outer), f.mode(), f);
}

double tail_start(double alpha, double s) {
    return student_crossovers(alpha, s).a4;
}

CrossoverSet numeric_crossovers(const ScaleFamily& f) {
    const double rel = 1e-4; // finite-difference step as a fraction of scale
    const auto d2p_dscale2 = [&](double x) {
        return pdf(f.with_scale_multiplier(1.0 + rel), x) -
               2.0 * pdf(f, x) + pdf(f.with_scale_multiplier(1.0 - rel), x);
    };
    const double mode = f.mode();
    double lo = mode - 10.0 * f.scale;
    const double hi = mode + 10.0 * f.scale;
    if (f.family == Family::Lognormal) lo = std::max(lo, 1e-12);

    const auto brackets = bracket_roots(d2p_dscale2, lo, hi, 400);
    if (brackets.size() != 4)
        throw structure_not_found(
            "expected 4 sign changes of d2p/dscale2, found " +
            std::to_string(brackets.size()));

    double roots[4];
    for (int i = 0; i < 4; ++i)
        roots[i] = bisect(d2p_dscale2, brackets[i].first, brackets[i].second,
                          1e-9 * f.scale);
    std::sort(roots, roots + 4);
    return make_set(roots[0], roots[1], roots[2], roots[3], mode, f);
}

Region region_classify(double x, const CrossoverSet& cs) {
    if (x > cs.a2 && x < cs.a3) return Region::Peak;
    if ((x > cs.a1 && x <= cs.a2) || (x >= cs.a3 && x < cs.a4))
        return Region::Shoulder;
    return Region::Tail;
}

const char* region_name(Region r) {
    switch (r) {
        case Region::Tail: return "tail";
        case Region::Shoulder: return "shoulder";
        case Region::Peak: return "peak";
    }
    return "?";
}

TunnelReport tunnel_inequality_check(const ScaleFamily& f, double delta,
                                     const std::vector<double>& grid) {
    CrossoverSet cs{};
    switch (f.family) {
        case Family::Gaussian:
            cs = gaussian_crossovers(f.location, f.scale);
            break;
        case Family::StudentT:
            cs = student_crossovers(f.tail_exponent, f.scale);
            break;
        case Family::Lognormal:
            cs = lognormal_crossovers(f.location, f.scale);
            break;
    }

    TunnelReport rep;
    rep.regions = {{Region::Peak, 0, 0, 0.0, 0.0},
                   {Region::Shoulder, 0, 0, 0.0, 0.0},
                   {Region::Tail, 0, 0, 0.0, 0.0}};
    bool first = true;
    const double exclusion = 1e-3 * f.scale;
    for (double x : grid) {
        if (std::abs(x - cs.a1) < exclusion || std::abs(x - cs.a2) < exclusion ||
            std::abs(x - cs.a3) < exclusion || std::abs(x - cs.a4) < exclusion)
            continue;
        const double d = perturbed_pdf(f, delta, x) - pdf(f, x);
        const Region r = region_classify(x, cs);
        // Expected sign: the perturbation raises peak and tails, lowers the
        // shoulders; margin is slack in the expected direction.
        const double margin = (r == Region::Shoulder) ? -d : d;
        auto& stat = rep.regions[r == Region::Peak ? 0
                                 : r == Region::Shoulder ? 1 : 2];
        ++stat.points;
        ++rep.total_points;
        if (stat.points == 1 || margin < stat.worst_margin) {
            stat.worst_margin = margin;
            stat.worst_x = x;
        }
        if (margin < 0.0) {
            ++stat.violations;
            ++rep.total_violations;
        }
        if (first || margin < rep.worst_margin) {
            rep.worst_margin = margin;
            rep.worst_x = x;
            first = false;
        }
    }
    rep.pass = rep.total_violations == 0;
    return rep;
}

} // namespace fattail
