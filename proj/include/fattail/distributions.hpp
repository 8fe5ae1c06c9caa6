#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace fattail {

enum class Family { Gaussian, StudentT, Lognormal };

// One-parameter-scale unimodal density. `location` is mu for Gaussian, the
// center for Student-T, and the log-mean for Lognormal. `tail_exponent` is
// alpha, finite only for Student-T.
struct ScaleFamily {
    Family family = Family::Gaussian;
    double location = 0.0;
    double scale = 1.0;
    double tail_exponent = std::numeric_limits<double>::infinity();

    static ScaleFamily gaussian(double mu, double sigma);
    static ScaleFamily student(double alpha, double s, double center = 0.0);
    static ScaleFamily lognormal(double mu, double sigma);

    // Same family with the scale multiplied by m (the stochastic-volatility
    // component construction).
    ScaleFamily with_scale_multiplier(double m) const;

    // Mode of the density: location for the symmetric families,
    // exp(mu - sigma^2) for Lognormal.
    double mode() const;
};

// Weighted set of scale multipliers. The mixture density is the weight-sum
// of the base family with scale replaced by scale*multiplier.
struct MixtureSpec {
    struct Component {
        double weight;
        double multiplier;
    };
    std::vector<Component> components;

    // Equal-weight {1-delta, 1+delta} pair; the delta-perturbed sigma.
    static MixtureSpec two_point(double delta);
    static MixtureSpec single();

    double mean_multiplier() const;
    // Rescales all multipliers by (sum w_i m_i^2)^(-1/2) so the mixture
    // variance matches the base variance (isolates the fourth moment).
    MixtureSpec variance_matched() const;

    // Throws invalid_parameter unless weights are positive and sum to 1
    // within 1e-12 and every multiplier is strictly positive.
    void validate() const;
};

double pdf(const ScaleFamily& f, double x);

// Symmetric scale perturbation: (p_{s(1+delta)}(x) + p_{s(1-delta)}(x)) / 2.
double perturbed_pdf(const ScaleFamily& f, double delta, double x);

// Location-shift variant (p(x+delta) + p(x-delta)) / 2, kept under its own
// name; it is NOT the perturbation the crossover analysis is about (it
// lowers the peak of any unimodal density).
double shifted_perturbed_pdf(const ScaleFamily& f, double delta, double x);

double mixture_pdf(const ScaleFamily& f, const MixtureSpec& mix, double x);

// mean always present; variance from order >= 2; kurtosis from order >= 4.
// Kurtosis is the fourth central moment over variance squared (3 for a
// Gaussian). Moments that do not exist throw moment_undefined.
struct Moments {
    double mean = 0.0;
    std::optional<double> variance;
    std::optional<double> kurtosis;
};

Moments moments(const ScaleFamily& f, int order = 4);
Moments moments(const ScaleFamily& f, const MixtureSpec& mix, int order = 4);

struct QuasiViolation {
    double x;
    double y;
    double omega;
};

// Checks p(w*x + (1-w)*y) >= min(p(x), p(y)) for all grid pairs and
// w in {0.1, ..., 0.9}. Returns the first violating triple, or nullopt if
// the density is quasiconcave on the grid.
std::optional<QuasiViolation> quasiconcavity_check(
    const std::function<double(double)>& density, const std::vector<double>& grid);
std::optional<QuasiViolation> quasiconcavity_check(const ScaleFamily& f,
                                                   const std::vector<double>& grid);
std::optional<QuasiViolation> quasiconcavity_check(const ScaleFamily& f,
                                                   const MixtureSpec& mix,
                                                   const std::vector<double>& grid);

// Probability mass of (lo, hi) under the base and the delta-perturbed
// density, both by quadrature. Infinite bounds are allowed.
std::pair<double, double> tunnel_mass(const ScaleFamily& f, double delta,
                                      double lo, double hi);

// Quadrature of an arbitrary integrand against the family's density-scaled
// window (used for moment cross-checks); integrates f.pdf * g over the
// support with family-appropriate transforms. Exposed because the crossover
// and test code need the same windows.
double integrate_density(const ScaleFamily& f,
                         const std::function<double(double)>& g, double lo,
                         double hi);

} // namespace fattail
