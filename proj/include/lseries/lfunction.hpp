#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lseries/characters.hpp"
#include "lseries/dirichlet_series.hpp"
#include "lseries/errors.hpp"
#include "lseries/gamma.hpp"
#include "lseries/hurwitz.hpp"

namespace lseries {

using Cxd = std::complex<double>;

/// L(s, chi) for any s != 1 (and any s at all when chi is non-principal),
/// through the Hurwitz-zeta decomposition q^{-s} sum_a chi(a) zeta(s, a/q).
/// For non-principal characters the regularized Hurwitz value is used in
/// every term; the poles cancel against sum_a chi(a) = 0, so the formula
/// is uniformly valid, including at s = 1.
inline Cxd l_value(const DirichletCharacter& chi, Cxd s) {
    const std::uint64_t q = chi.modulus;
    if (chi.is_principal()) {
        // L(s, chi_0) = zeta(s) prod_{p | q} (1 - p^{-s})
        Cxd v = hurwitz_zeta(s, 1.0);  // PoleError at s = 1
        for (auto [p, e] : chardetail::factorize(q))
            v *= 1.0 - std::exp(-s * std::log(static_cast<double>(p)));
        return v;
    }
    Cxd sum = 0.0;
    for (std::uint64_t a = 1; a < q; ++a) {
        if (!chi.angle[a]) continue;
        sum += chi.value(a) *
               hurwitz_zeta_regularized(s, static_cast<double>(a) / q);
    }
    return std::exp(-s * std::log(static_cast<double>(q))) * sum;
}

/// Root number W(chi) = tau(chi) / (i^a sqrt(q)) of a primitive character.
inline Cxd root_number(const DirichletCharacter& chi) {
    const Cxd ia = chi.parity == 0 ? Cxd(1.0, 0.0) : Cxd(0.0, 1.0);
    return gauss_sum(chi) / (ia * std::sqrt(static_cast<double>(chi.modulus)));
}

/// Completed L-function Lambda(s, chi) = (q/pi)^{(s+a)/2} Gamma((s+a)/2)
/// L(s, chi), entire for primitive non-principal chi and satisfying
/// Lambda(1-s, conj chi) = conj(W) Lambda(s, chi).
inline Cxd completed_l(const DirichletCharacter& chi, Cxd s) {
    if (!chi.primitive)
        throw PrimitivityError("completed_l: character must be primitive");
    if (chi.is_principal())
        throw PoleError("completed_l: principal characters are excluded "
                        "(their completion has poles); use the zeta path");
    const double a = chi.parity;
    const double qpi = chi.modulus / M_PI;
    return std::exp(0.5 * (s + a) * std::log(qpi)) *
           gamma_complex(0.5 * (s + a)) * l_value(chi, s);
}

/// Riemann xi: the entire completion of zeta used as the calibration
/// target, xi(s) = (1/2) s (s-1) pi^{-s/2} Gamma(s/2) zeta(s).
inline Cxd riemann_xi(Cxd s) {
    if (std::abs(s - Cxd(1.0, 0.0)) < 1e-13 || std::abs(s) < 1e-13) {
        // remove the 0/0 at the pole/zero pairs exactly: xi(0) = xi(1) = 1/2
        return 0.5;
    }
    return 0.5 * s * (s - 1.0) * std::exp(-0.5 * s * std::log(M_PI)) *
           gamma_complex(0.5 * s) * hurwitz_zeta(s, 1.0);
}

/// The parity-split archimedean factor shared by all characters of equal
/// parity once the functional equation is written as
/// L(k - s) = N^s gamma(s) L*(s).
struct GammaDescriptor {
    int parity = 0;
    friend bool operator==(const GammaDescriptor&, const GammaDescriptor&) = default;
};

inline Cxd comparison_gamma_factor(const GammaDescriptor& g, Cxd s) {
    const double a = g.parity;
    return std::exp((0.5 - s) * std::log(M_PI)) * gamma_complex(0.5 * (s + a)) /
           gamma_complex(0.5 * (1.0 + a - s));
}

struct FunctionalEquationForm {
    double N = 1.0;
    GammaDescriptor gamma;
    double k = 1.0;
};

/// Everything the comparison pipeline needs to know about one L-function.
///
/// The dual side refers to the rewritten equation L(k-s) = N^s gamma(s)
/// L*(s); for a primitive character, L*(s) = (W/sqrt(N)) L(s, conj chi),
/// so the dual coefficients are (W/sqrt(N)) conj(chi(n)). Characters
/// induced from a primitive one by a squarefree extension r = q/f are
/// supported as detector-grade descriptors (their L has the extra Euler
/// factors and the completion is not the clean one).
struct LFunctionDescriptor {
    enum class Kind { character, zeta, induced };
    Kind kind = Kind::character;
    std::string id;
    DirichletCharacter chi;            // unused for zeta
    DirichletCharacter inducer;        // for induced: the primitive chi*
    std::uint64_t conductor = 1;       // N_i entering N^s
    double weight = 1.0;               // k
    GammaDescriptor gamma;
    Cxd root_number_value{1.0, 0.0};
    std::vector<std::pair<Cxd, int>> poles;  // of the raw L

    std::size_t series_period() const {
        return kind == Kind::zeta ? 1 : chi.modulus;
    }

    Cxd coefficient(std::uint64_t n) const {
        switch (kind) {
            case Kind::zeta: return 1.0;
            default: return chi.value(n);
        }
    }

    std::optional<RationalComplex> coefficient_exact(std::uint64_t n) const {
        if (kind == Kind::zeta) return RationalComplex(Rational(1), Rational(0));
        return chi.exact_value(n);
    }

    Cxd dual_coefficient(std::uint64_t n) const {
        switch (kind) {
            case Kind::zeta:
                return 1.0;
            case Kind::character:
                return root_number_value /
                       std::sqrt(static_cast<double>(conductor)) *
                       std::conj(chi.value(n));
            case Kind::induced: {
                // L*(s) = (f/q)^s prod_{p | r}(1 - chi*(p) p^{s-1})
                //         * (W/sqrt(f)) L(s, conj chi*)
                // whose coefficients convolve conj(chi*) with the finite
                // prefactor u = r/d |-> mu(d) chi*(d)/d.
                const std::uint64_t f = inducer.modulus;
                const std::uint64_t r = chi.modulus / f;
                Cxd acc = 0.0;
                for (std::uint64_t d = 1; d <= r; ++d) {
                    if (r % d != 0) continue;
                    const std::uint64_t u = r / d;
                    if (n % u != 0) continue;
                    // mu(d) for squarefree d | r
                    int mu = 1;
                    for (auto [p, e] : chardetail::factorize(d)) {
                        (void)p;
                        mu = e == 1 ? -mu : 0;
                    }
                    acc += static_cast<double>(mu) * inducer.value(d) /
                           static_cast<double>(d) *
                           std::conj(inducer.value(n / u));
                }
                return root_number_value /
                       std::sqrt(static_cast<double>(f)) * acc;
            }
        }
        return 0.0;
    }

    Cxd value(Cxd s) const {
        switch (kind) {
            case Kind::zeta: return hurwitz_zeta(s, 1.0);
            case Kind::character: return l_value(chi, s);
            case Kind::induced: {
                Cxd v = l_value(inducer, s);
                const std::uint64_t f = inducer.modulus;
                for (auto [p, e] : chardetail::factorize(chi.modulus / f)) {
                    (void)e;
                    v *= 1.0 - inducer.value(p) *
                                   std::exp(-s * std::log(static_cast<double>(p)));
                }
                return v;
            }
        }
        return 0.0;
    }

    Cxd dual_value(Cxd s) const {
        switch (kind) {
            case Kind::zeta:
                return hurwitz_zeta(s, 1.0);
            case Kind::character:
                return root_number_value /
                       std::sqrt(static_cast<double>(conductor)) *
                       l_value(conjugate(chi), s);
            case Kind::induced: {
                const std::uint64_t f = inducer.modulus;
                const std::uint64_t r = chi.modulus / f;
                Cxd pref = std::exp(-s * std::log(static_cast<double>(r)));
                for (auto [p, e] : chardetail::factorize(r)) {
                    (void)e;
                    pref *= 1.0 - inducer.value(p) *
                                      std::exp((s - 1.0) *
                                               std::log(static_cast<double>(p)));
                }
                return pref * root_number_value /
                       std::sqrt(static_cast<double>(f)) *
                       l_value(conjugate(inducer), s);
            }
        }
        return 0.0;
    }

    /// Entire completion used by the zero machinery.
    Cxd completed(Cxd s) const {
        switch (kind) {
            case Kind::zeta: return riemann_xi(s);
            case Kind::character: return completed_l(chi, s);
            case Kind::induced:
                throw PrimitivityError(
                    "completed: induced characters have no clean completion");
        }
        return 0.0;
    }

    bool has_entire_completion() const {
        return kind == Kind::zeta ||
               (kind == Kind::character && chi.primitive && !chi.is_principal());
    }

    /// Truncated coefficient series a_1..a_M.
    SeriesC series(std::size_t truncation) const {
        SeriesC out(truncation, 1.0);
        for (std::size_t n = 1; n <= truncation; ++n)
            out.a(n) = coefficient(n);
        return out;
    }

    std::optional<SeriesQi> series_exact(std::size_t truncation) const {
        SeriesQi out(truncation, 1.0);
        for (std::size_t n = 1; n <= truncation; ++n) {
            auto v = coefficient_exact(n);
            if (!v) return std::nullopt;
            out.a(n) = *v;
        }
        return out;
    }

    SeriesC dual_series(std::size_t truncation) const {
        SeriesC out(truncation, 1.0);
        for (std::size_t n = 1; n <= truncation; ++n)
            out.a(n) = dual_coefficient(n);
        return out;
    }
};

/// Rewrite the classical functional equation of a primitive character in
/// the comparison shape L(k-s) = N^s gamma(s) L*(s) with k = 1, N = q and
/// gamma depending only on the parity.
inline std::pair<LFunctionDescriptor, FunctionalEquationForm>
to_comparison_form(const DirichletCharacter& chi) {
    if (!chi.primitive)
        throw PrimitivityError("to_comparison_form: character must be primitive");
    LFunctionDescriptor d;
    if (chi.modulus == 1) {
        d.kind = LFunctionDescriptor::Kind::zeta;
        d.id = "zeta";
        d.conductor = 1;
        d.gamma = {0};
        d.root_number_value = 1.0;
        d.poles = {{Cxd(1.0, 0.0), 1}};
    } else {
        d.kind = LFunctionDescriptor::Kind::character;
        d.chi = chi;
        d.id = std::to_string(chi.modulus) + "." + std::to_string(chi.index);
        d.conductor = chi.modulus;
        d.gamma = {chi.parity};
        d.root_number_value = root_number(chi);
        if (chi.is_principal()) d.poles = {{Cxd(1.0, 0.0), 1}};
    }
    d.weight = 1.0;
    FunctionalEquationForm form{static_cast<double>(d.conductor), d.gamma,
                                d.weight};
    return {d, form};
}

/// Descriptor for zeta through the xi completion (calibration target).
inline LFunctionDescriptor zeta_descriptor() {
    return to_comparison_form(character(1, 0)).first;
}

/// Detector-grade descriptor of an induced character: conductor taken as
/// the full modulus q so that ratio tests against the primitive inducer
/// see N = q/f; requires q/f squarefree and coprime to f.
inline LFunctionDescriptor induced_descriptor(const DirichletCharacter& chi) {
    if (chi.primitive)
        throw Error("induced_descriptor: character is already primitive");
    auto [f, inducer] = conductor_and_primitivize(chi);
    const std::uint64_t r = chi.modulus / f;
    for (auto [p, e] : chardetail::factorize(r)) {
        if (e > 1 || f % p == 0)
            throw Error("induced_descriptor: extension must be squarefree and "
                        "coprime to the conductor");
    }
    LFunctionDescriptor d;
    d.kind = LFunctionDescriptor::Kind::induced;
    d.chi = chi;
    d.inducer = inducer;
    d.id = std::to_string(chi.modulus) + "." + std::to_string(chi.index);
    d.conductor = chi.modulus;  // detector-grade: N = q, not the conductor f
    d.weight = 1.0;
    d.gamma = {chi.parity};
    d.root_number_value = root_number(inducer);
    return d;
}

/// Residual of the rewritten functional equation at one point:
/// |L(k-s) - N^s gamma(s) L*(s)|.
inline double functional_equation_residual(const LFunctionDescriptor& d, Cxd s) {
    const Cxd lhs = d.value(d.weight - s);
    const Cxd rhs = std::exp(s * std::log(static_cast<double>(d.conductor))) *
                    comparison_gamma_factor(d.gamma, s) * d.dual_value(s);
    return std::abs(lhs - rhs);
}

} // namespace lseries
