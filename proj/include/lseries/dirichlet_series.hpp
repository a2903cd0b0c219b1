#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "lseries/errors.hpp"
#include "lseries/rational.hpp"

namespace lseries {

/// Coefficient-ring glue so the series algebra runs over floating complex
/// numbers and over exact integers / rationals / Q(i) alike.
template <typename T>
struct CoeffTraits;

template <>
struct CoeffTraits<std::complex<double>> {
    static constexpr bool exact = false;
    static double magnitude(const std::complex<double>& v) { return std::abs(v); }
    static std::complex<double> to_complex(const std::complex<double>& v) { return v; }
};

template <>
struct CoeffTraits<double> {
    static constexpr bool exact = false;
    static double magnitude(double v) { return std::abs(v); }
    static std::complex<double> to_complex(double v) { return {v, 0.0}; }
};

template <>
struct CoeffTraits<std::int64_t> {
    static constexpr bool exact = true;
    static double magnitude(std::int64_t v) { return std::abs(static_cast<double>(v)); }
    static std::complex<double> to_complex(std::int64_t v) {
        return {static_cast<double>(v), 0.0};
    }
};

template <>
struct CoeffTraits<Rational> {
    static constexpr bool exact = true;
    static double magnitude(const Rational& v) { return std::abs(v.to_double()); }
    static std::complex<double> to_complex(const Rational& v) {
        return {v.to_double(), 0.0};
    }
};

template <>
struct CoeffTraits<RationalComplex> {
    static constexpr bool exact = true;
    static double magnitude(const RationalComplex& v) {
        return std::hypot(v.re.to_double(), v.im.to_double());
    }
    static std::complex<double> to_complex(const RationalComplex& v) {
        return {v.re.to_double(), v.im.to_double()};
    }
};

/// Truncated ordinary Dirichlet series sum a_n n^{-s}, coefficients stored
/// for n = 1..truncation. Truncation is explicit everywhere; nothing is
/// silently extended by zeros.
template <typename T>
struct DirichletSeries {
    std::vector<T> coeffs;                 // a_1 .. a_M
    std::optional<double> sigma_a_hint;    // abscissa of absolute convergence

    DirichletSeries() = default;
    explicit DirichletSeries(std::size_t truncation,
                             std::optional<double> hint = std::nullopt)
        : coeffs(truncation), sigma_a_hint(hint) {
        if (truncation == 0)
            throw TruncationError("DirichletSeries: truncation must be >= 1");
    }
    DirichletSeries(std::vector<T> c, std::optional<double> hint = std::nullopt)
        : coeffs(std::move(c)), sigma_a_hint(hint) {
        if (coeffs.empty())
            throw TruncationError("DirichletSeries: truncation must be >= 1");
    }

    std::size_t truncation() const { return coeffs.size(); }

    /// 1-indexed coefficient access.
    const T& a(std::size_t n) const { return coeffs.at(n - 1); }
    T& a(std::size_t n) { return coeffs.at(n - 1); }
};

using SeriesC = DirichletSeries<std::complex<double>>;
using SeriesZ = DirichletSeries<std::int64_t>;
using SeriesQ = DirichletSeries<Rational>;
using SeriesQi = DirichletSeries<RationalComplex>;

/// delta_1: the convolution identity (a_1 = 1, everything else 0).
template <typename T>
DirichletSeries<T> delta_series(std::size_t truncation) {
    DirichletSeries<T> d(truncation, -std::numeric_limits<double>::infinity());
    d.a(1) = T(1);
    return d;
}

/// Dirichlet convolution c_n = sum_{d|n} a_d b_{n/d} for n <= n_max.
template <typename T>
DirichletSeries<T> convolve(const DirichletSeries<T>& a,
                            const DirichletSeries<T>& b,
                            std::size_t n_max) {
    if (n_max < 1) throw TruncationError("convolve: n_max must be >= 1");
    if (n_max > a.truncation() || n_max > b.truncation())
        throw TruncationError("convolve: n_max exceeds a stored truncation");
    DirichletSeries<T> c(n_max);
    for (std::size_t d = 1; d <= n_max; ++d) {
        for (std::size_t m = 1; d * m <= n_max; ++m)
            c.a(d * m) = c.a(d * m) + a.a(d) * b.a(m);
    }
    return c;
}

/// Leading-coefficient tolerance for floating division. Exact rings use 0.
inline constexpr double kDivideLeadingTol = 1e-12;

/// Dirichlet division: the unique q with convolve(q, b) = a up to n_max.
/// Requires b_1 != 0 (tolerance-checked in floating mode).
template <typename T>
DirichletSeries<T> divide(const DirichletSeries<T>& a,
                          const DirichletSeries<T>& b,
                          std::size_t n_max) {
    if (n_max < 1) throw TruncationError("divide: n_max must be >= 1");
    if (n_max > a.truncation() || n_max > b.truncation())
        throw TruncationError("divide: n_max exceeds a stored truncation");
    const double lead = CoeffTraits<T>::magnitude(b.a(1));
    if (lead == 0.0 || (!CoeffTraits<T>::exact && lead < kDivideLeadingTol))
        throw DivisionError("divide: leading coefficient b_1 is (numerically) zero");

    DirichletSeries<T> q(n_max);
    q.a(1) = a.a(1) / b.a(1);
    for (std::size_t n = 2; n <= n_max; ++n) {
        T acc = a.a(n);
        for (std::size_t d = 1; d * d <= n; ++d) {
            if (n % d != 0) continue;
            std::size_t e = n / d;
            // both divisor pairs (d, n/d), counting q_d b_{n/d} with d < n
            if (d < n) acc = acc - q.a(d) * b.a(e);
            if (e != d && e < n) acc = acc - q.a(e) * b.a(d);
        }
        q.a(n) = acc / b.a(1);
    }
    return q;
}

template <typename T>
struct EvaluationResult {
    std::complex<double> value;
    std::optional<double> tail_bound;  // nullopt means "unknown"
};

/// Evaluate the truncated series at s. The tail bound uses the integral
/// comparison sum_{n>M} A n^{sigma_a - sigma} <= A M^{sigma_a-sigma+1} /
/// (sigma - sigma_a - 1) with the coefficient scale A inferred from the
/// stored data; it is only reported for Re(s) > sigma_a_hint + 1.
template <typename T>
EvaluationResult<T> evaluate(const DirichletSeries<T>& series,
                             std::complex<double> s, std::size_t n_max) {
    if (n_max < 1 || n_max > series.truncation())
        throw TruncationError("evaluate: n_max exceeds stored truncation");
    std::complex<double> v = 0.0;
    for (std::size_t n = n_max; n >= 1; --n) {  // small terms first
        const auto c = CoeffTraits<T>::to_complex(series.a(n));
        if (c != std::complex<double>(0.0, 0.0))
            v += c * std::exp(-s * std::log(static_cast<double>(n)));
    }
    std::optional<double> tail;
    if (series.sigma_a_hint) {
        const double sa = *series.sigma_a_hint;
        const double sigma = s.real();
        if (sa == -std::numeric_limits<double>::infinity()) {
            // declared finite support: the tail is the sum of whatever
            // stored coefficients were left out (zero when fully summed)
            double rest = 0.0;
            for (std::size_t n = n_max + 1; n <= series.truncation(); ++n)
                rest += CoeffTraits<T>::magnitude(series.a(n)) *
                        std::pow(static_cast<double>(n), -sigma);
            tail = rest;
        } else if (sigma > sa + 1.0) {
            double scale = 0.0;
            for (std::size_t n = 1; n <= series.truncation(); ++n)
                scale = std::max(scale, CoeffTraits<T>::magnitude(series.a(n)) *
                                            std::pow(static_cast<double>(n), -sa));
            const double M = static_cast<double>(n_max);
            tail = scale * std::pow(M, sa - sigma + 1.0) / (sigma - sa - 1.0);
        }
    }
    return {v, tail};
}

/// General Dirichlet series sum c_n e^{-lambda_n s} with real exponents
/// strictly increasing (a finite truncation of the full object).
template <typename T>
struct GeneralDirichletSeries {
    std::vector<double> exponents;
    std::vector<T> coeffs;

    GeneralDirichletSeries() = default;
    GeneralDirichletSeries(std::vector<double> lambda, std::vector<T> c)
        : exponents(std::move(lambda)), coeffs(std::move(c)) {
        if (exponents.size() != coeffs.size())
            throw Error("GeneralDirichletSeries: exponent/coefficient length mismatch");
        for (std::size_t i = 0; i + 1 < exponents.size(); ++i)
            if (!(exponents[i] < exponents[i + 1]))
                throw Error("GeneralDirichletSeries: exponents must be strictly increasing");
        for (double l : exponents)
            if (!(l >= 0.0))
                throw Error("GeneralDirichletSeries: exponents must be nonnegative");
    }

    std::complex<double> evaluate(std::complex<double> s) const {
        std::complex<double> v = 0.0;
        for (std::size_t i = 0; i < exponents.size(); ++i)
            v += CoeffTraits<T>::to_complex(coeffs[i]) * std::exp(-s * exponents[i]);
        return v;
    }
};

/// Embed an ODS as a GDS via lambda_n = log n, dropping zero coefficients.
template <typename T>
GeneralDirichletSeries<T> ods_to_gds(const DirichletSeries<T>& series) {
    std::vector<double> lambda;
    std::vector<T> c;
    for (std::size_t n = 1; n <= series.truncation(); ++n) {
        if (CoeffTraits<T>::magnitude(series.a(n)) == 0.0) continue;
        lambda.push_back(std::log(static_cast<double>(n)));
        c.push_back(series.a(n));
    }
    return GeneralDirichletSeries<T>(std::move(lambda), std::move(c));
}

/// Empirical estimate of the abscissa of absolute convergence from the
/// limsup of log(sum_{n<=x} |a_n|) / log x at dyadic x. Advisory only: it
/// never gates the correctness of the other operations.
///
/// Bounded partial sums switch the estimator to the tail form
/// log(sum_{n>x} |a_n|) / log x, whose limit is nonpositive; a series whose
/// stored tail is identically zero (finite support) reports -inf, as does
/// the all-zero series.
template <typename T>
double abscissa_estimate(const DirichletSeries<T>& series) {
    const std::size_t M = series.truncation();
    if (M < 16)
        throw InsufficientDataError("abscissa_estimate: truncation must be >= 16");

    std::vector<double> partial(M + 1, 0.0);
    for (std::size_t n = 1; n <= M; ++n)
        partial[n] = partial[n - 1] + CoeffTraits<T>::magnitude(series.a(n));
    const double total = partial[M];
    if (total == 0.0) return -std::numeric_limits<double>::infinity();

    std::vector<std::size_t> dyadic;
    for (std::size_t x = 16; x <= M; x *= 2) dyadic.push_back(x);
    if (dyadic.back() != M) dyadic.push_back(M);

    // Growing partial sums: limsup log S(x)/log x over the top dyadic half.
    const double growth = partial[dyadic.back()] /
                          partial[dyadic[dyadic.size() / 2]];
    if (growth > 1.25) {
        double est = -std::numeric_limits<double>::infinity();
        for (std::size_t i = dyadic.size() / 2; i < dyadic.size(); ++i) {
            const std::size_t x = dyadic[i];
            est = std::max(est, std::log(partial[x]) /
                                    std::log(static_cast<double>(x)));
        }
        return est;
    }

    // Flattening partial sums: tail quotient, sampled away from the cap M
    // (the stored tail at x = M is zero by construction).
    double est = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < dyadic.size(); ++i) {
        const std::size_t x = dyadic[i];
        const double tail = total - partial[x];
        if (tail > 0.0)
            est = std::max(est, std::log(tail) / std::log(static_cast<double>(x)));
    }
    return est;
}

} // namespace lseries
