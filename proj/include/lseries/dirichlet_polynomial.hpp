#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "lseries/dirichlet_series.hpp"
#include "lseries/errors.hpp"

namespace lseries {

/// Finite Dirichlet polynomial sum_{u in support} a_u u^{-s}. Zero
/// coefficients are never stored.
template <typename T>
struct DirichletPolynomialT {
    std::map<std::uint64_t, T> support;

    void set(std::uint64_t u, const T& value) {
        if (u < 1) throw Error("DirichletPolynomial: indices start at 1");
        if (CoeffTraits<T>::magnitude(value) == 0.0)
            support.erase(u);
        else
            support[u] = value;
    }

    /// Exact finite evaluation; the tail is zero by definition.
    std::complex<double> evaluate(std::complex<double> s) const {
        std::complex<double> v = 0.0;
        for (const auto& [u, c] : support)
            v += CoeffTraits<T>::to_complex(c) *
                 std::exp(-s * std::log(static_cast<double>(u)));
        return v;
    }

    /// View as a truncated series of the given length (>= max support index).
    DirichletSeries<T> as_series(std::size_t truncation) const {
        DirichletSeries<T> out(truncation,
                               -std::numeric_limits<double>::infinity());
        for (const auto& [u, c] : support) {
            if (u > truncation)
                throw TruncationError("DirichletPolynomial: support exceeds truncation");
            out.a(u) = c;
        }
        return out;
    }
};

using DirichletPolynomial = DirichletPolynomialT<std::complex<double>>;

enum class SupportStatus { Supported, Refuted };

/// Verdict of the divisor-support detector. On Supported, `polynomial`
/// holds the coefficients on divisors of N (above tolerance); on Refuted,
/// `witness` is the smallest index n with n not dividing N and |q_n| > tol.
/// Either way the verdict is only "checked up to" the stored truncation.
template <typename T>
struct SupportDetectionT {
    SupportStatus status;
    DirichletPolynomialT<T> polynomial;  // valid when Supported
    std::uint64_t witness = 0;           // valid when Refuted
    std::size_t checked_up_to = 0;
};

using SupportDetection = SupportDetectionT<std::complex<double>>;

/// Test whether the series is supported on divisors of N, up to tolerance
/// and up to the stored truncation. tol = 0 gives the exact-mode check.
template <typename T>
SupportDetectionT<T> detect_support(const DirichletSeries<T>& q,
                                    std::uint64_t N, double tol) {
    if (N < 1) throw Error("detect_support: N must be a positive integer");
    if (q.truncation() < N)
        throw InsufficientDataError(
            "detect_support: truncation smaller than N, nothing to decide");
    SupportDetectionT<T> result;
    result.checked_up_to = q.truncation();
    for (std::size_t n = 1; n <= q.truncation(); ++n) {
        const double mag = CoeffTraits<T>::magnitude(q.a(n));
        if (N % n == 0) {
            if (mag > tol) result.polynomial.set(n, q.a(n));
        } else if (mag > tol) {
            result.status = SupportStatus::Refuted;
            result.witness = n;
            return result;
        }
    }
    result.status = SupportStatus::Supported;
    return result;
}

/// Divisors of n in increasing order.
inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

} // namespace lseries
