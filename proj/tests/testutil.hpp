#pragma once

#include <algorithm>
#include <cmath>

// Relative error with a hard floor, for accuracy assertions where doctest's
// Approx (additive unit scale) would be too lax on small magnitudes.
inline double rel_err(double value, double reference, double floor = 1e-300) {
    return std::abs(value - reference) / std::max(std::abs(reference), floor);
}
