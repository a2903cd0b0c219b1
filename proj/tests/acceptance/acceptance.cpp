// Acceptance runner: one line per criterion, [PASS]/[FAIL] with the
// measured numbers. Exit code = number of failed criterion lines.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <vector>

#include "lseries/dirichlet_polynomial.hpp"
#include "lseries/dirichlet_series.hpp"
#include "lseries/hamburger.hpp"
#include "lseries/laplace_reconstruct.hpp"
#include "lseries/lfunction.hpp"
#include "lseries/rational_function.hpp"
#include "lseries/zeros.hpp"

using namespace lseries;
using Cx = std::complex<double>;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int criterion, const char* label, bool pass, const char* fmt,
            ...) {
    std::printf("[%s] criterion %2d: %-34s ", pass ? "PASS" : "FAIL",
                criterion, label);
    va_list args;
    va_start(args, fmt);
    std::vprintf(fmt, args);
    va_end(args);
    std::printf("\n");
    std::fflush(stdout);
    if (!pass) ++failures;
}

LFunctionDescriptor descriptor(std::uint64_t q, std::uint64_t idx) {
    return to_comparison_form(character(q, idx)).first;
}

// --- 1. algebra round trip --------------------------------------------

void criterion_1() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(20260808);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const std::size_t M = 128;
    double worst = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
        SeriesC a(M), b(M);
        for (std::size_t n = 1; n <= M; ++n) {
            a.a(n) = Cx(unit(rng), unit(rng));
            b.a(n) = Cx(unit(rng), unit(rng));
        }
        b.a(1) = 1.0;
        auto q = divide(convolve(a, b, M), b, M);
        for (std::size_t n = 1; n <= M; ++n)
            worst = std::max(worst, std::abs(q.a(n) - a.a(n)));
    }
    const double dt = seconds_since(t0);
    report(1, "divide(convolve(a,b),b) = a", worst <= 1e-10 && dt < 5.0,
           "max err %.3e (<= 1e-10), %.2f s (< 5 s)", worst, dt);
}

// --- 2. Moebius oracle -------------------------------------------------

void criterion_2() {
    const auto t0 = Clock::now();
    const std::size_t M = 10000;
    SeriesZ ones(M, 1.0);
    for (auto& c : ones.coeffs) c = 1;
    auto q = divide(delta_series<std::int64_t>(M), ones, M);

    // independent sieve
    std::vector<std::int64_t> mu(M + 1, 1);
    std::vector<bool> composite(M + 1, false);
    std::vector<std::size_t> primes;
    for (std::size_t i = 2; i <= M; ++i) {
        if (!composite[i]) { primes.push_back(i); mu[i] = -1; }
        for (std::size_t p : primes) {
            if (i * p > M) break;
            composite[i * p] = true;
            if (i % p == 0) { mu[i * p] = 0; break; }
            mu[i * p] = -mu[i];
        }
    }
    std::size_t mismatches = 0;
    for (std::size_t n = 1; n <= M; ++n)
        if (q.a(n) != mu[n]) ++mismatches;
    const double dt = seconds_since(t0);
    report(2, "delta/zeta = Moebius (exact)", mismatches == 0 && dt < 5.0,
           "%zu mismatches up to %zu, %.2f s (< 5 s)", mismatches, M, dt);
}

// --- 3. evaluation calibration -----------------------------------------

void criterion_3() {
    // Euler-Maclaurin-corrected summation oracle for zeta(2)
    const double K = 20000.0;
    double zeta2_oracle = 0.0;
    for (double n = K; n >= 1.0; n -= 1.0) zeta2_oracle += 1.0 / (n * n);
    zeta2_oracle += 1.0 / K - 1.0 / (2.0 * K * K) + 1.0 / (6.0 * K * K * K);

    // accelerated Leibniz oracle for L(1, chi_4)
    const int n = 40;
    double d = std::pow(3.0 + std::sqrt(8.0), n);
    d = (d + 1.0 / d) / 2.0;
    double b = -1.0, c = -d, leibniz = 0.0;
    for (int k = 0; k < n; ++k) {
        c = b - c;
        leibniz += c / (2 * k + 1);
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0));
    }
    leibniz /= d;

    const double zeta2 = l_value(character(1, 0), {2.0, 0.0}).real();
    const double l4 = l_value(character(4, 1), {1.0, 0.0}).real();
    const double e1 = std::abs(zeta2 - M_PI * M_PI / 6.0);
    const double e2 = std::abs(l4 - M_PI / 4.0);
    const double o1 = std::abs(zeta2 - zeta2_oracle);
    const double o2 = std::abs(l4 - leibniz);
    report(3, "zeta(2), L(1,chi_4) calibration",
           e1 <= 1e-10 && e2 <= 1e-10 && o1 <= 1e-10 && o2 <= 1e-10,
           "|zeta(2)-pi^2/6| = %.2e, |L(1,chi4)-pi/4| = %.2e (<= 1e-10)", e1,
           e2);
}

// --- 4. functional-equation residuals -----------------------------------

void criterion_4() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> re(0.0, 1.0), im(-20.0, 20.0);
    double worst = 0.0;
    for (auto [q, idx] : {std::pair<std::uint64_t, std::uint64_t>{3, 1},
                          {4, 1},
                          {5, 1}}) {
        auto d = descriptor(q, idx);
        for (int i = 0; i < 20; ++i)
            worst = std::max(worst,
                             functional_equation_residual(d, Cx(re(rng), im(rng))));
    }
    const double dt = seconds_since(t0);
    report(4, "L(1-s) = N^s gamma(s) L*(s)", worst <= 1e-8 && dt < 30.0,
           "max residual %.3e (<= 1e-8) at 60 points, %.2f s (< 30 s)", worst,
           dt);
}

// --- 5. zero pipeline integrity -----------------------------------------

void criterion_5() {
    const auto t0 = Clock::now();
    bool pass = true;
    double worst_residual = 0.0;
    for (auto [q, idx] : {std::pair<std::uint64_t, std::uint64_t>{3, 1},
                          {4, 1},
                          {5, 1},
                          {5, 2},
                          {5, 3}}) {
        auto d = descriptor(q, idx);
        auto list = critical_line_zeros(d, 30.0);
        if (list.off_line_or_missed) pass = false;
        const int rect =
            count_zeros_rectangle_robust(d, Rectangle(-1, 2, 0.05, 30.0));
        if (list.total_multiplicity() != rect) pass = false;
        for (const auto& e : list.entries) {
            worst_residual = std::max(worst_residual, e.residual);
            if (e.residual > 1e-6) pass = false;
        }
    }
    auto zd = zeta_descriptor();
    auto coarse = critical_line_zeros(zd, 30.0, 0.05);
    auto fine = critical_line_zeros(zd, 30.0, 0.025);
    double drift = 0.0;
    if (coarse.entries.size() != 3 || fine.entries.size() != 3) pass = false;
    else
        for (int i = 0; i < 3; ++i)
            drift = std::max(drift, std::abs(coarse.entries[i].ordinate -
                                             fine.entries[i].ordinate));
    if (drift > 1e-4) pass = false;
    const double dt = seconds_since(t0);
    report(5, "zero counts, residuals, zeta calib", pass && dt < 120.0,
           "worst residual %.2e (<= 1e-6), zeta 3 zeros drift %.2e (<= 1e-4), "
           "%.1f s (< 2 min)",
           worst_residual, drift, dt);
}

// --- 6. distinct-zero desk check ----------------------------------------

void criterion_6() {
    const auto t0 = Clock::now();
    auto r30 =
        corollary1_experiment(character(3, 1), character(4, 1), 30.0, 1e-4);
    auto r30b =
        corollary1_experiment(character(3, 1), character(4, 1), 30.0, 1e-4);
    auto r45 =
        corollary1_experiment(character(3, 1), character(4, 1), 45.0, 1e-4);
    const bool refuted = r30.verdict.status == VerdictStatus::Refuted &&
                         r30.verdict.witness_index.has_value();
    const bool reproducible =
        refuted && r30b.verdict.witness_index == r30.verdict.witness_index;
    const bool zero_matches = r30.comparison.matched.empty();
    const bool nonempty = !r30.comparison.only_in_1.empty() &&
                          !r30.comparison.only_in_2.empty();
    const bool growing =
        r45.comparison.only_in_1.size() > r30.comparison.only_in_1.size() &&
        r45.comparison.only_in_2.size() > r30.comparison.only_in_2.size();
    bool witnesses_ok = !r30.pole_witnesses.empty();
    for (const auto& w : r30.pole_witnesses)
        if (!w.certified) witnesses_ok = false;
    const double dt = seconds_since(t0);
    report(6, "chi_3 vs chi_4 distinct zeros",
           refuted && reproducible && zero_matches && nonempty && growing &&
               witnesses_ok && dt < 300.0,
           "REFUTED(witness %llu), unmatched %zu/%zu at T=30 -> %zu/%zu at "
           "T=45, %.1f s (< 5 min)",
           static_cast<unsigned long long>(
               r30.verdict.witness_index.value_or(0)),
           r30.comparison.only_in_1.size(), r30.comparison.only_in_2.size(),
           r45.comparison.only_in_1.size(), r45.comparison.only_in_2.size(),
           dt);
}

// --- 7. positive detector control ----------------------------------------

void criterion_7() {
    auto d6 = induced_descriptor(character(6, 1));
    auto d3 = descriptor(3, 1);

    // floating mode: off-support coefficients below 1e-12
    auto qf = divide(d6.series(256), d3.series(256), 256);
    double off_support = 0.0;
    for (std::size_t n = 1; n <= 256; ++n)
        if (2 % n != 0) off_support = std::max(off_support, std::abs(qf.a(n)));

    // exact mode: exactly zero, polynomial {1:1, 2:1}
    auto v = ratio_polynomial_test(d6, d3, 256);
    const bool exact_ok =
        v.exact_mode && v.status == VerdictStatus::Verified &&
        v.polynomial.support.size() == 2 &&
        std::abs(v.polynomial.support.at(1) - Cx(1.0)) == 0.0 &&
        std::abs(v.polynomial.support.at(2) - Cx(1.0)) == 0.0;
    auto qe = divide(*d6.series_exact(256), *d3.series_exact(256), 256);
    bool exact_zero = true;
    for (std::size_t n = 3; n <= 256; ++n)
        if (!qe.a(n).is_zero()) exact_zero = false;

    auto dual = dual_polynomial_check(v, d6, d3, 256);
    report(7, "induced/chi_3 detector control",
           off_support <= 1e-12 && exact_ok && exact_zero && dual.pass,
           "off-support %.2e (<= 1e-12), exact zeros: %s, dual pass: %s "
           "(dev %.2e)",
           off_support, exact_zero ? "yes" : "no", dual.pass ? "yes" : "no",
           dual.worst_deviation);
}

// --- 8. divisor-space structure ------------------------------------------

void criterion_8() {
    bool pass = true;
    // each basis element u^{-s}, u | 12, is detected with support {u}
    int dimension = 0;
    for (std::uint64_t u : divisors(12)) {
        SeriesC basis(12);
        basis.a(u) = 1.0;
        auto det = detect_support(basis, 12, 1e-9);
        if (det.status != SupportStatus::Supported ||
            det.polynomial.support.size() != 1 ||
            !det.polynomial.support.count(u))
            pass = false;
        ++dimension;
    }
    if (dimension != 6) pass = false;  // d(12) = 6

    SeriesC off(12);
    off.a(1) = 1.0;
    off.a(5) = 1.0;
    auto refuted = detect_support(off, 12, 1e-9);
    if (refuted.status != SupportStatus::Refuted || refuted.witness != 5)
        pass = false;

    // non-integer N: the Lemma-2 path refutes at n = 1
    auto v = ratio_polynomial_test(descriptor(3, 1), descriptor(4, 1), 64);
    if (v.status != VerdictStatus::Refuted || v.witness_index != 1 ||
        v.integer_ratio())
        pass = false;

    report(8, "divisor basis of the target space", pass,
           "d(12) = %d basis checks, witness-5 fixture, non-integer N "
           "witness 1",
           dimension);
}

// --- 9. Laplace reconstruction --------------------------------------------

void criterion_9() {
    const DiscreteMeasure mu({{std::log(2.0), {1.0, 0.0}},
                              {std::log(3.0), {-2.0, 0.0}},
                              {std::log(5.0), {0.5, 0.0}}});
    const double tv = total_variation(mu);

    const auto t0 = Clock::now();
    const int d1 = 26000;
    auto set1 = sample_laplace(mu, d1);
    auto r1 = interval_mass_from_laplace(set1, 1.0, 1.3, 0.01, tv);
    const double err1 = std::abs(r1.estimate - Cx(-2.0));
    const bool pass_a = err1 <= r1.error_bound && r1.error_bound <= 0.5;
    report(9, "reconstruction at eps = 0.01", pass_a,
           "degree %d: |est-(-2)| = %.2e <= bound %.4f <= 0.5, %.1f s", d1,
           err1, r1.error_bound, seconds_since(t0));

    // Same fixture at eps = 0.001 and a higher degree. The criterion asks
    // for error_bound to tighten by >= 2x. The Bernstein sup error at the
    // ramp kinks scales like (1/eps) sqrt(x(1-x)/d), so matching the
    // tenfold slope increase needs degree ~ 9e6, far beyond what any
    // sample precision and runtime can reach (the pairing needs
    // ~ d log2(3) bits of fixed-point scale); at every reachable degree
    // the bound comes out looser instead. Run it faithfully and report.
    const auto t1 = Clock::now();
    const int d2 = 30000;
    auto set2 = sample_laplace(mu, d2);
    auto r2 = interval_mass_from_laplace(set2, 1.0, 1.3, 0.001, tv);
    const double err2 = std::abs(r2.estimate - Cx(-2.0));
    const bool sound2 = err2 <= r2.error_bound;
    const bool pass_b = sound2 && r2.error_bound <= r1.error_bound / 2.0;
    report(9, "tightening at eps = 0.001", pass_b,
           "degree %d: bound %.4f vs required <= %.4f (sound: %s; "
           "unattainable at reachable degree, see README), %.1f s",
           d2, r2.error_bound, r1.error_bound / 2.0, sound2 ? "yes" : "no",
           seconds_since(t1));
}

// --- 10. inverse Laplace of rationals --------------------------------------

void criterion_10() {
    bool pass = true;
    RationalFunction F({1.0}, {1.0, 2.0, 1.0});  // 1/(s+1)^2
    auto density = inverse_laplace_rational(F);
    for (double t : {0.2, 1.0, 3.0})
        if (std::abs(density.eval(t) - t * std::exp(-t)) > 1e-9) pass = false;
    double worst = 0.0;
    for (double s : {0.0, 1.0, 2.0}) {
        const auto got = laplace_numeric(density, {s, 0.0});
        worst = std::max(worst, std::abs(got - F.eval({s, 0.0})));
    }
    if (worst > 1e-6) pass = false;

    bool raised = false;
    try {
        RationalFunction bad({0.0, 0.0, 0.0, 1.0}, {1.0, 1.0});  // s^3/(s+1)
        inverse_laplace_rational(bad);
    } catch (const NotLaplaceError&) {
        raised = true;
    }
    if (!raised) pass = false;
    report(10, "inverse Laplace of 1/(s+1)^2", pass,
           "quadrature residual %.2e (<= 1e-6), non-constant part raises: %s",
           worst, raised ? "yes" : "no");
}

} // namespace

int main() {
    std::printf("lseries acceptance suite\n");
    std::printf("------------------------\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    std::printf("------------------------\n");
    std::printf("%d criterion line(s) failed\n", failures);
    return failures;
}
