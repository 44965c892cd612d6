#pragma once

#include <cmath>
#include <limits>

// Shared by the scalar and AVX2 kernels so both start Newton from the same
// point. Solves a5 q^5 + a3 q^3 + a1 q = a0 for q > 0 with a0 > 0 and
// a3, a5 >= 0: the left side is convex on q > 0, so there is exactly one
// positive root and Newton started above it decreases monotonically onto it.

namespace ncmems::kernels::detail {

inline constexpr int kMaxNewton = 200;

/// Upper bound on the positive root; +inf when no positive root exists.
inline double positive_root_upper_bound(double a5, double a3, double a1, double a0) {
    double hi = std::numeric_limits<double>::infinity();
    if (a1 > 0.0) {
        hi = a0 / a1;
        if (a3 > 0.0) {
            hi = std::fmin(hi, std::cbrt(a0 / a3));
        }
        if (a5 > 0.0) {
            hi = std::fmin(hi, std::pow(a0 / a5, 0.2));
        }
    } else {
        // Where a3 q^3 >= 2 |a1| q and a3 q^3 >= 2 a0 the left side exceeds a0.
        if (a3 > 0.0) {
            hi = std::fmax(std::sqrt(-2.0 * a1 / a3), std::cbrt(2.0 * a0 / a3));
        }
        if (a5 > 0.0) {
            hi = std::fmin(hi, std::fmax(std::sqrt(std::sqrt(-2.0 * a1 / a5)), std::pow(2.0 * a0 / a5, 0.2)));
        }
    }
    // Rounding in the bound must not land below the root.
    return hi * (1.0 + 1e-12);
}

}  // namespace ncmems::kernels::detail
