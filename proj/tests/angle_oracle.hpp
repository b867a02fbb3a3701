#pragma once

#include <cmath>

#include "cordiceq/cordic.hpp"

namespace testutil {

// Relative deviation of an elementary angle from its leading term:
//   atan(2^-s)  = 2^-s * (1 + d),   d = sum_{k>=1} (-1)^k 4^(-ks) / (2k+1)
//   atanh(2^-s) = 2^-s * (1 + d),   d = sum_{k>=1}        4^(-ks) / (2k+1)
// The halving inequalities alpha(s+1) vs alpha(s)/2 reduce to comparing d at
// s+1 and s. A direct atan/atanh comparison loses the difference to rounding
// beyond shift ~26; the series keeps full relative precision at any shift.
// Requires s >= 1 (the series converges geometrically with ratio 4^-s).
inline long double angle_series_deviation(cordiceq::CordicMode mode, int s) {
    const long double r = ldexpl(1.0L, -2 * s);
    long double d = 0.0L;
    long double pw = 1.0L;
    for (int k = 1; k <= 40; ++k) {
        pw *= r;
        const long double term = pw / static_cast<long double>(2 * k + 1);
        if (mode == cordiceq::CordicMode::Circular && (k & 1))
            d -= term;
        else
            d += term;
    }
    return d;
}

// alpha(s+1) > alpha(s)/2 for circular angles, < for hyperbolic.
inline bool halving_inequality_holds(cordiceq::CordicMode mode, int s) {
    using cordiceq::CordicMode;
    if (s == 0)  // circular only; resolvable directly at this size
        return atanl(0.5L) > 0.5L * atanl(1.0L);
    const long double lo = angle_series_deviation(mode, s);
    const long double hi = angle_series_deviation(mode, s + 1);
    return mode == CordicMode::Circular ? hi > lo : hi < lo;
}

}  // namespace testutil
