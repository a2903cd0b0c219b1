#pragma once

#include <cmath>
#include <complex>

namespace lseries {

/// Complex gamma function, Lanczos approximation (g = 7, 9 terms) with
/// reflection for Re z < 1/2. Relative error stays below ~1e-12 across the
/// strip |Im z| <= 60 used by the evaluation paths here; the tests pin this
/// against the |Gamma(1/2 + it)|^2 = pi/cosh(pi t) identity.
inline std::complex<double> gamma_complex(std::complex<double> z) {
    static const double lanczos[9] = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

    if (z.real() < 0.5) {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return M_PI / (std::sin(M_PI * z) * gamma_complex(1.0 - z));
    }
    z -= 1.0;
    std::complex<double> acc = lanczos[0];
    for (int k = 1; k < 9; ++k) acc += lanczos[k] / (z + static_cast<double>(k));
    const std::complex<double> t = z + 7.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

} // namespace lseries
