#pragma once

#include <vector>

#include "fattail/distributions.hpp"

namespace fattail {

// The four zeros of d^2 p / d sigma^2, sorted ascending. They partition the
// support into peak (a2,a3), shoulders (a1,a2) u (a3,a4), and tails.
struct CrossoverSet {
    double a1, a2, a3, a4;
    double mode;
    ScaleFamily family;
};

CrossoverSet gaussian_crossovers(double mu, double sigma);
CrossoverSet student_crossovers(double alpha, double s);
CrossoverSet lognormal_crossovers(double mu, double sigma);

// Finite-difference route: sign-scan of the second sigma-difference of the
// pdf over [mode - 10*scale, mode + 10*scale] (400 brackets), refined by
// bisection to 1e-9*scale. Independent of the closed forms above.
CrossoverSet numeric_crossovers(const ScaleFamily& f);

// Where the tail starts: a4 of the Student-T family.
double tail_start(double alpha, double s);

enum class Region { Tail, Shoulder, Peak };

// Peak iff x in (a2,a3); Shoulder iff x in (a1,a2] u [a3,a4); Tail
// otherwise. Boundary ties go to Shoulder.
Region region_classify(double x, const CrossoverSet& cs);

const char* region_name(Region r);

// Pointwise check of the sign pattern (>=0 peak, <=0 shoulders, >=0 tails)
// of perturbed_pdf - pdf on a grid, against the base family's crossovers.
// Points within 1e-3*scale of any a_i are excluded. worst_margin is the
// most negative "expected-direction" slack; a violation is a point whose
// difference has the wrong sign beyond 0.
struct TunnelReport {
    struct RegionStat {
        Region region;
        int points = 0;
        int violations = 0;
        double worst_margin = 0.0; // signed: negative means violated
        double worst_x = 0.0;
    };
    std::vector<RegionStat> regions; // peak, shoulder, tail order
    int total_points = 0;
    int total_violations = 0;
    double worst_margin = 0.0;
    double worst_x = 0.0;
    bool pass = false;
};

TunnelReport tunnel_inequality_check(const ScaleFamily& f, double delta,
                                     const std::vector<double>& grid);

} // namespace fattail
