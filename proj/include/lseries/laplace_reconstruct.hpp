#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>
#include <mpfr.h>

#include "lseries/errors.hpp"
#include "lseries/measure.hpp"
#include "lseries/mollifier.hpp"

namespace lseries {

/// Integer Laplace samples L mu(k), k = 0..degree, held as fixed-point
/// integers scaled by 2^scale_bits. The interval-mass functional pairs a
/// degree-d Bernstein polynomial with these moments through a finite
/// difference table whose worst-case amplification is 3^d, so the scale
/// has to grow linearly with the degree; see reconstruction_scale_bits.
struct LaplaceSampleSet {
    int degree = 0;
    long scale_bits = 0;
    std::vector<mpz_class> re;
    std::vector<mpz_class> im;
    bool has_imag = false;
};

/// Fixed-point scale needed so the degree-d pairing retains ~48 accurate
/// bits: ceil(d * log2(3)) plus guard bits.
inline long reconstruction_scale_bits(int degree) {
    return static_cast<long>(std::ceil(degree * 1.5849625007211562)) + 96;
}

namespace detail {

/// round(v * 2^bits) as an exact integer built from the double's mantissa.
inline mpz_class mpz_scaled_from_double(double v, long bits) {
    if (v == 0.0) return mpz_class(0);
    int e = 0;
    const double mant = std::frexp(v, &e);  // v = mant * 2^e, |mant| in [0.5,1)
    const auto imant = static_cast<long>(std::ldexp(mant, 53));
    mpz_class z(imant);
    const long shift = bits + e - 53;
    if (shift >= 0)
        mpz_mul_2exp(z.get_mpz_t(), z.get_mpz_t(), shift);
    else
        mpz_fdiv_q_2exp(z.get_mpz_t(), z.get_mpz_t(), -shift);
    return z;
}

/// acc += c * (p / 2^drop) where c is a double and p a fixed-point integer.
inline void add_scaled_product(mpz_class& acc, const mpz_class& p, double c,
                               long drop) {
    if (c == 0.0) return;
    int e = 0;
    const double mant = std::frexp(c, &e);
    const auto imant = static_cast<long>(std::ldexp(mant, 53));
    mpz_class term = p * mpz_class(imant);
    const long shift = drop - e + 53;
    if (shift > 0)
        mpz_fdiv_q_2exp(term.get_mpz_t(), term.get_mpz_t(), shift);
    else if (shift < 0)
        mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), -shift);
    acc += term;
}

inline double mpz_to_double_scaled(const mpz_class& z, long scale_bits) {
    long e = 0;
    const double d = mpz_get_d_2exp(&e, z.get_mpz_t());
    return std::ldexp(d, static_cast<int>(e - scale_bits));
}

} // namespace detail

/// Exact-moment sampler: each atom position is rounded once to working
/// precision (x = e^{-t} via MPFR) and then powered exactly in fixed point.
/// Rounding the position once keeps the sample-set consistent with an
/// actual measure (atoms nudged by ~2^-scale), which is what the
/// reconstruction bound tolerates; rounding each sample independently
/// would not be.
inline LaplaceSampleSet sample_laplace(const DiscreteMeasure& mu, int degree,
                                       long scale_bits = 0) {
    if (degree < 0) throw Error("sample_laplace: degree must be >= 0");
    if (scale_bits <= 0) scale_bits = reconstruction_scale_bits(degree);
    const long work_bits = scale_bits + 64;

    LaplaceSampleSet set;
    set.degree = degree;
    set.scale_bits = scale_bits;
    set.re.assign(degree + 1, mpz_class(0));
    set.im.assign(degree + 1, mpz_class(0));
    for (const auto& atom : mu.atoms)
        if (atom.c.imag() != 0.0) set.has_imag = true;

    mpfr_t x;
    mpfr_init2(x, work_bits);
    mpz_class xfix, p;
    for (const auto& atom : mu.atoms) {
        mpfr_set_d(x, -atom.t, MPFR_RNDN);
        mpfr_exp(x, x, MPFR_RNDN);
        mpfr_mul_2ui(x, x, static_cast<unsigned long>(work_bits), MPFR_RNDN);
        mpfr_get_z(xfix.get_mpz_t(), x, MPFR_RNDN);

        p = mpz_class(1) << work_bits;  // x^0 at working scale
        for (int k = 0; k <= degree; ++k) {
            detail::add_scaled_product(set.re[k], p, atom.c.real(),
                                       work_bits - scale_bits);
            if (set.has_imag)
                detail::add_scaled_product(set.im[k], p, atom.c.imag(),
                                           work_bits - scale_bits);
            if (k < degree) {
                p *= xfix;
                mpz_fdiv_q_2exp(p.get_mpz_t(), p.get_mpz_t(), work_bits);
            }
        }
    }
    mpfr_clear(x);
    return set;
}

/// Quantize externally supplied double-precision samples. Samples must be
/// present for every k = 0..degree. Double inputs carry ~1e-16 relative
/// noise per sample which the difference table amplifies by up to 3^degree,
/// so this route is only trustworthy for small degrees (~<= 25).
inline LaplaceSampleSet
samples_from_doubles(const std::map<int, std::complex<double>>& samples,
                     int degree, long scale_bits = 0) {
    if (scale_bits <= 0) scale_bits = reconstruction_scale_bits(degree);
    LaplaceSampleSet set;
    set.degree = degree;
    set.scale_bits = scale_bits;
    set.re.assign(degree + 1, mpz_class(0));
    set.im.assign(degree + 1, mpz_class(0));
    for (int k = 0; k <= degree; ++k) {
        auto it = samples.find(k);
        if (it == samples.end())
            throw InsufficientDataError(
                "samples_from_doubles: need samples for every k = 0..degree");
        set.re[k] = detail::mpz_scaled_from_double(it->second.real(), scale_bits);
        set.im[k] = detail::mpz_scaled_from_double(it->second.imag(), scale_bits);
        if (it->second.imag() != 0.0) set.has_imag = true;
    }
    return set;
}

struct ReconstructionResult {
    std::complex<double> estimate;
    double error_bound;   // 2 TV eps + TV * sup|f_eps - P| on the grid
    double sup_gap;       // measured sup|f_eps - P|
    int degree;
};

namespace detail {

/// Bernstein values f(j/d) of the ramp, plus the support range [j_lo, j_hi].
inline std::vector<double> bernstein_node_values(const MollifierRamp& f,
                                                 int degree, int& j_lo,
                                                 int& j_hi) {
    std::vector<double> vals(degree + 1, 0.0);
    j_lo = degree + 1;
    j_hi = -1;
    for (int j = 0; j <= degree; ++j) {
        const double v =
            mollifier_value(f, static_cast<double>(j) / degree);
        vals[j] = v;
        if (v != 0.0) {
            j_lo = std::min(j_lo, j);
            j_hi = std::max(j_hi, j);
        }
    }
    return vals;
}

/// Evaluate P(x) = sum_j vals[j] * b_{j,d}(x) with the stable windowed
/// recurrence around the binomial peak.
inline double bernstein_eval(const std::vector<double>& vals, int degree,
                             double x) {
    if (x <= 0.0) return vals.front();
    if (x >= 1.0) return vals.back();
    const int jc = std::clamp(static_cast<int>(std::lround(x * degree)), 0,
                              degree);
    const double lx = std::log(x), l1x = std::log1p(-x);
    auto lchoose = [&](int j) {
        return std::lgamma(degree + 1.0) - std::lgamma(j + 1.0) -
               std::lgamma(degree - j + 1.0);
    };
    const double lbc = lchoose(jc) + jc * lx + (degree - jc) * l1x;
    const double ratio = x / (1.0 - x);
    double acc = vals[jc] * 1.0;  // relative to b_{jc}
    double rel = 1.0;
    for (int j = jc + 1; j <= degree; ++j) {
        rel *= ratio * (degree - j + 1.0) / j;
        if (rel < 1e-20) break;
        acc += vals[j] * rel;
    }
    rel = 1.0;
    for (int j = jc - 1; j >= 0; --j) {
        rel /= ratio * (degree - j) / (j + 1.0);
        if (rel < 1e-20) break;
        acc += vals[j] * rel;
    }
    return acc * std::exp(lbc);
}

/// sup over the measurement grid of |f_eps - P|, including the ramp
/// breakpoints. Grid size 10^4 per the documented construction.
inline double bernstein_sup_gap(const MollifierRamp& f,
                                const std::vector<double>& vals, int degree) {
    const int grid_n = 10000;
    double sup = 0.0;
    auto probe = [&](double x) {
        if (x < 0.0 || x > 1.0) return;
        const double gap =
            std::abs(mollifier_value(f, x) - bernstein_eval(vals, degree, x));
        sup = std::max(sup, gap);
    };
    for (int i = 0; i <= grid_n; ++i)
        probe(static_cast<double>(i) / grid_n);
    for (double bp : {f.plateau_lo() - f.epsilon, f.plateau_lo(),
                      f.plateau_hi(), f.plateau_hi() + f.epsilon})
        probe(bp);
    return sup;
}

/// One channel of the pairing sum_j f(j/d) C(d,j) D^{d-j}(j), where D is
/// the forward-difference table of the scaled moments. The table is swept
/// in place row by row over the dependency cone of the nonzero f nodes.
inline double pair_channel(std::vector<mpz_class> row,  // scaled moments
                           const std::vector<double>& vals, int degree,
                           int j_lo, int j_hi, long scale_bits) {
    double acc = 0.0;
    mpz_class binom, term;
    auto collect = [&](int j, const mpz_class& cell) {
        if (vals[j] == 0.0) return;
        mpz_bin_uiui(binom.get_mpz_t(), degree, j);
        term = binom * cell;
        acc += vals[j] * mpz_to_double_scaled(term, scale_bits);
    };
    if (j_hi == degree) collect(degree, row[degree]);
    const int r_max = degree - j_lo;
    for (int r = 1; r <= r_max; ++r) {
        const int k_hi = degree - r;
        for (int k = j_lo; k <= k_hi; ++k) row[k] -= row[k + 1];
        if (k_hi <= j_hi) collect(k_hi, row[k_hi]);
    }
    return acc;
}

} // namespace detail

/// Interval-mass reconstruction from integer Laplace samples: pairs the
/// Bernstein approximation of the ramp f_eps with the sample moments and
/// reports the a-priori bound 2 TV eps + TV * sup|f_eps - P| (sup measured
/// on a 10^4-point grid). Soundness needs the true total variation (or an
/// upper bound for it) in tv_bound.
inline ReconstructionResult
interval_mass_from_laplace(const LaplaceSampleSet& samples, double a, double b,
                           double epsilon, double tv_bound) {
    const int degree = samples.degree;
    if (degree < 1) throw Error("interval_mass_from_laplace: degree must be >= 1");
    if (static_cast<int>(samples.re.size()) != degree + 1)
        throw InsufficientDataError(
            "interval_mass_from_laplace: need samples for every k = 0..degree");
    const MollifierRamp ramp(a, b, epsilon);

    int j_lo = 0, j_hi = 0;
    const auto vals = detail::bernstein_node_values(ramp, degree, j_lo, j_hi);
    ReconstructionResult result;
    result.degree = degree;
    result.sup_gap = detail::bernstein_sup_gap(ramp, vals, degree);
    result.error_bound = 2.0 * tv_bound * epsilon + tv_bound * result.sup_gap;
    if (j_hi < j_lo) {  // ramp narrower than the node spacing
        result.estimate = 0.0;
        return result;
    }
    const double est_re = detail::pair_channel(samples.re, vals, degree, j_lo,
                                               j_hi, samples.scale_bits);
    const double est_im =
        samples.has_imag
            ? detail::pair_channel(samples.im, vals, degree, j_lo, j_hi,
                                   samples.scale_bits)
            : 0.0;
    result.estimate = {est_re, est_im};
    return result;
}

/// Direct atom-membership mass of the closed interval [a, b].
inline std::complex<double> interval_mass_direct(const DiscreteMeasure& mu,
                                                 double a, double b) {
    std::complex<double> mass = 0.0;
    for (const auto& atom : mu.atoms)
        if (atom.t >= a && atom.t <= b) mass += atom.c;
    return mass;
}

/// True when some atom sits within epsilon (in x = e^{-t}) of an interval
/// endpoint, i.e. on a mollifier ramp, where membership is not decided.
inline bool boundary_ambiguous(const DiscreteMeasure& mu, double a, double b,
                               double epsilon) {
    for (const auto& atom : mu.atoms) {
        const double x = std::exp(-atom.t);
        if (std::abs(x - std::exp(-a)) <= epsilon ||
            std::abs(x - std::exp(-b)) <= epsilon)
            return true;
    }
    return false;
}

} // namespace lseries
