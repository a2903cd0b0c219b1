#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "lseries/errors.hpp"
#include "lseries/rational.hpp"

namespace lseries {

namespace cyclodetail {

/// Cyclotomic polynomial Phi_n as integer coefficients, ascending degree,
/// by exact division of x^n - 1 through the divisors' polynomials.
inline std::vector<std::int64_t> cyclotomic_poly(std::uint64_t n) {
    static std::map<std::uint64_t, std::vector<std::int64_t>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<std::int64_t> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;  // x^n - 1
    for (std::uint64_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        const auto phi_d = cyclotomic_poly(d);
        // exact division num /= phi_d (phi_d is monic)
        std::vector<std::int64_t> q(num.size() - phi_d.size() + 1, 0);
        for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
            const std::int64_t c = num[i + phi_d.size() - 1];
            q[i] = c;
            for (std::size_t j = 0; j < phi_d.size(); ++j)
                num[i + j] -= c * phi_d[j];
        }
        num = std::move(q);
    }
    cache[n] = num;
    return num;
}

} // namespace cyclodetail

/// Exact zero test for a finite sum of roots of unity given as angle
/// rationals (fractions of a full turn): reduces the integer exponent
/// polynomial modulo the cyclotomic polynomial of the common denominator.
inline bool root_of_unity_sum_is_zero(const std::vector<Rational>& angles) {
    if (angles.empty()) return true;
    std::uint64_t lcm = 1;
    for (const auto& a : angles)
        lcm = std::lcm<std::uint64_t>(lcm, static_cast<std::uint64_t>(a.den()));
    if (lcm > 4096)
        throw Error("root_of_unity_sum_is_zero: order too large for the exact test");

    std::vector<std::int64_t> poly(lcm, 0);
    for (const auto& a : angles) {
        std::int64_t num = a.num() % static_cast<std::int64_t>(lcm * a.den());
        if (num < 0) num += static_cast<std::int64_t>(lcm) * a.den();
        const auto idx = static_cast<std::uint64_t>(num) *
                         (lcm / static_cast<std::uint64_t>(a.den())) % lcm;
        poly[idx] += 1;
    }

    const auto phi = cyclodetail::cyclotomic_poly(lcm);
    // remainder of poly mod phi (monic): the sum vanishes iff it is zero
    std::vector<std::int64_t> rem = poly;
    for (int i = static_cast<int>(rem.size()) - 1;
         i >= static_cast<int>(phi.size()) - 1; --i) {
        const std::int64_t c = rem[i];
        if (c == 0) continue;
        for (std::size_t j = 0; j < phi.size(); ++j)
            rem[i - (phi.size() - 1) + j] -= c * phi[j];
    }
    for (std::size_t i = 0; i + 1 < phi.size() && i < rem.size(); ++i)
        if (rem[i] != 0) return false;
    return true;
}

} // namespace lseries
