#pragma once

#include <doctest.h>

// Pure relative comparison. Approx's default mixes in an absolute term
// (scale 1), which silently accepts anything for values many orders of
// magnitude below 1, e.g. deep-OTM option premiums.
inline doctest::Approx rel(double expected, double eps = 1e-10) {
    return doctest::Approx(expected).epsilon(eps).scale(0.0);
}
