#pragma once

#include <cmath>

#include "lseries/errors.hpp"

namespace lseries {

/// Piecewise-linear approximation of the indicator of [a, b] transported
/// through x = e^{-t}: plateau 1 on [e^{-b}, e^{-a}] (e^{-b} < e^{-a} since
/// a < b), linear ramps of width epsilon on both sides, 0 elsewhere on
/// [0, 1]. Requires e^{-b} - epsilon >= 0 and e^{-a} + epsilon <= 1 so the
/// ramps stay inside [0, 1].
struct MollifierRamp {
    double a;
    double b;
    double epsilon;

    MollifierRamp(double a_, double b_, double eps) : a(a_), b(b_), epsilon(eps) {
        if (!(0.0 < a && a < b))
            throw Error("MollifierRamp: need 0 < a < b");
        if (!(eps > 0.0))
            throw Error("MollifierRamp: epsilon must be positive");
        if (std::exp(-b) - eps < 0.0 || std::exp(-a) + eps > 1.0)
            throw Error("MollifierRamp: epsilon too large for the interval");
    }

    double plateau_lo() const { return std::exp(-b); }
    double plateau_hi() const { return std::exp(-a); }
};

/// Value of the ramp function at x in [0, 1].
inline double mollifier_value(const MollifierRamp& f, double x) {
    const double lo = f.plateau_lo();
    const double hi = f.plateau_hi();
    if (x <= lo - f.epsilon || x >= hi + f.epsilon) return 0.0;
    if (x >= lo && x <= hi) return 1.0;
    if (x < lo) return (x - (lo - f.epsilon)) / f.epsilon;
    return ((hi + f.epsilon) - x) / f.epsilon;
}

} // namespace lseries
