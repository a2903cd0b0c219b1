#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <vector>

#include "lseries/cyclotomic.hpp"
#include "lseries/errors.hpp"
#include "lseries/rational.hpp"

namespace lseries {

namespace chardetail {

inline std::uint64_t power_mod(std::uint64_t base, std::uint64_t exp,
                               std::uint64_t mod) {
    std::uint64_t r = 1 % mod;
    base %= mod;
    while (exp) {
        if (exp & 1) r = (__uint128_t)r * base % mod;
        base = (__uint128_t)base * base % mod;
        exp >>= 1;
    }
    return r;
}

inline std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> f;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        f.emplace_back(p, e);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t phi = 1;
    for (auto [p, e] : factorize(n)) {
        std::uint64_t pe = 1;
        for (int i = 1; i < e; ++i) pe *= p;
        phi *= pe * (p - 1);
    }
    return phi;
}

/// Smallest primitive root mod p, lifted so it generates mod p^e as well.
inline std::uint64_t primitive_root(std::uint64_t p, int e) {
    const std::uint64_t phi = p - 1;
    auto primes = factorize(phi);
    std::uint64_t g = 2;
    for (;; ++g) {
        bool ok = true;
        for (auto [q, _] : primes)
            if (power_mod(g, phi / q, p) == 1) { ok = false; break; }
        if (ok) break;
    }
    if (e > 1 && power_mod(g, p - 1, p * p) == 1) g += p;
    return g;
}

/// One cyclic factor of the unit group, with its discrete-log table over
/// residues modulo the prime power it belongs to.
struct CyclicFactor {
    std::uint64_t prime_power;
    std::uint64_t order;
    std::unordered_map<std::uint64_t, std::uint64_t> dlog;
};

/// Cyclic decomposition of (Z/q)^*, factors ordered by prime power (for
/// 2^e with e >= 3: the order-2 factor generated by -1 first, then the
/// power-of-two factor generated by 5). This ordering defines the
/// canonical character indexing.
inline std::vector<CyclicFactor> unit_group_factors(std::uint64_t q) {
    std::vector<CyclicFactor> factors;
    for (auto [p, e] : factorize(q)) {
        std::uint64_t pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        if (p == 2) {
            if (e == 1) continue;  // trivial group
            if (e == 2) {
                CyclicFactor f{pe, 2, {}};
                f.dlog[1] = 0;
                f.dlog[3] = 1;
                factors.push_back(std::move(f));
            } else {
                CyclicFactor sign{pe, 2, {}};
                CyclicFactor five{pe, pe / 4, {}};
                std::uint64_t p5 = 1;
                for (std::uint64_t y = 0; y < pe / 4; ++y) {
                    sign.dlog[p5] = 0;
                    five.dlog[p5] = y;
                    sign.dlog[pe - p5] = 1;
                    five.dlog[pe - p5] = y;
                    p5 = p5 * 5 % pe;
                }
                factors.push_back(std::move(sign));
                factors.push_back(std::move(five));
            }
        } else {
            CyclicFactor f{pe, euler_phi(pe), {}};
            const std::uint64_t g = primitive_root(p, e);
            std::uint64_t pw = 1;
            for (std::uint64_t k = 0; k < f.order; ++k) {
                f.dlog[pw] = k;
                pw = (__uint128_t)pw * g % pe;
            }
            factors.push_back(std::move(f));
        }
    }
    return factors;
}

inline Rational angle_mod1(Rational a) {
    // reduce into [0, 1)
    std::int64_t n = a.num(), d = a.den();
    std::int64_t r = n % d;
    if (r < 0) r += d;
    return Rational(r, d);
}

} // namespace chardetail

/// Dirichlet character mod q with values stored as exact roots of unity:
/// angle[a] is the fraction of a full turn (chi(a) = e^{2 pi i angle}) or
/// absent when gcd(a, q) > 1.
struct DirichletCharacter {
    std::uint64_t modulus = 1;
    std::uint64_t index = 0;  // canonical registry index, 0 = principal
    std::vector<std::optional<Rational>> angle;  // size = modulus
    int parity = 0;                              // chi(-1) = (-1)^parity
    std::uint64_t conductor = 1;
    bool primitive = true;

    bool is_principal() const {
        for (std::uint64_t a = 0; a < modulus; ++a)
            if (angle[a] && !(*angle[a] == Rational(0))) return false;
        return true;
    }

    const std::optional<Rational>& angle_at(std::uint64_t n) const {
        return angle[n % modulus];
    }

    std::complex<double> value(std::uint64_t n) const {
        const auto& a = angle_at(n);
        if (!a) return 0.0;
        const double theta = 2.0 * M_PI * a->to_double();
        return {std::cos(theta), std::sin(theta)};
    }

    /// Exact value when it lies in Q(i) (character order dividing 4).
    std::optional<RationalComplex> exact_value(std::uint64_t n) const {
        const auto& a = angle_at(n);
        if (!a) return RationalComplex(Rational(0), Rational(0));
        const auto r = chardetail::angle_mod1(*a);
        if (r == Rational(0)) return RationalComplex(Rational(1), Rational(0));
        if (r == Rational(1, 2)) return RationalComplex(Rational(-1), Rational(0));
        if (r == Rational(1, 4)) return RationalComplex(Rational(0), Rational(1));
        if (r == Rational(3, 4)) return RationalComplex(Rational(0), Rational(-1));
        return std::nullopt;
    }

    bool same_values(const DirichletCharacter& other) const {
        if (modulus != other.modulus) return false;
        for (std::uint64_t a = 0; a < modulus; ++a) {
            if (angle[a].has_value() != other.angle[a].has_value()) return false;
            if (angle[a] && !(chardetail::angle_mod1(*angle[a]) ==
                              chardetail::angle_mod1(*other.angle[a])))
                return false;
        }
        return true;
    }
};

/// All phi(q) characters mod q in canonical order (exponent tuples over the
/// cyclic decomposition, least-significant factor first; index 0 is the
/// principal character).
inline std::vector<DirichletCharacter> characters_mod(std::uint64_t q) {
    if (q < 1) throw Error("characters_mod: modulus must be >= 1");
    using namespace chardetail;
    const auto factors = unit_group_factors(q);
    const std::uint64_t count = euler_phi(q);

    std::vector<DirichletCharacter> out;
    out.reserve(count);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        DirichletCharacter chi;
        chi.modulus = q;
        chi.index = idx;
        chi.angle.resize(q);
        // exponent tuple in mixed radix over the factor orders
        std::vector<std::uint64_t> t(factors.size());
        std::uint64_t rest = idx;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            t[i] = rest % factors[i].order;
            rest /= factors[i].order;
        }
        for (std::uint64_t a = 0; a < q; ++a) {
            if (std::gcd(a, q) != 1) continue;
            Rational theta(0);
            for (std::size_t i = 0; i < factors.size(); ++i) {
                const auto it = factors[i].dlog.find(a % factors[i].prime_power);
                theta += Rational(
                    static_cast<std::int64_t>(t[i] * it->second % factors[i].order),
                    static_cast<std::int64_t>(factors[i].order));
            }
            chi.angle[a] = angle_mod1(theta);
        }
        if (q == 1) chi.angle[0] = Rational(0);  // the empty-product character
        // parity from chi(-1)
        const auto& am1 = chi.angle[(q - 1) % q];
        chi.parity = (am1 && *am1 == Rational(1, 2)) ? 1 : 0;
        out.push_back(std::move(chi));
    }

    // conductor and primitivity
    for (auto& chi : out) {
        chi.conductor = q;
        for (std::uint64_t f = 1; f < q; ++f) {
            if (q % f != 0) continue;
            bool factors_through = true;
            for (std::uint64_t a = 1; a < q && factors_through; ++a) {
                if (a % f != 1 % f || std::gcd(a, q) != 1) continue;
                if (!(chardetail::angle_mod1(*chi.angle[a]) == Rational(0)))
                    factors_through = false;
            }
            if (factors_through) {
                chi.conductor = f;
                break;
            }
        }
        chi.primitive = (chi.conductor == q);
    }
    return out;
}

/// chi by canonical position.
inline DirichletCharacter character(std::uint64_t q, std::uint64_t index) {
    auto all = characters_mod(q);
    if (index >= all.size())
        throw Error("character: index out of range (phi(q) characters exist)");
    return all[index];
}

/// Complex conjugate character (angles negated).
inline DirichletCharacter conjugate(const DirichletCharacter& chi) {
    auto all = characters_mod(chi.modulus);
    DirichletCharacter conj = chi;
    for (auto& a : conj.angle)
        if (a) a = chardetail::angle_mod1(-*a);
    for (const auto& cand : all)
        if (cand.same_values(conj)) return cand;
    throw Error("conjugate: conjugate character not found (corrupt table)");
}

/// Conductor and the primitive character inducing chi.
inline std::pair<std::uint64_t, DirichletCharacter>
conductor_and_primitivize(const DirichletCharacter& chi) {
    const std::uint64_t f = chi.conductor;
    if (f == chi.modulus) return {f, chi};
    // chi*(a) = chi(b) for any b = a (mod f) coprime to q
    DirichletCharacter target;
    target.modulus = f;
    target.angle.resize(f);
    for (std::uint64_t a = 0; a < f; ++a) {
        if (std::gcd(a, f) != 1) continue;
        std::uint64_t b = a;
        while (std::gcd(b, chi.modulus) != 1) b += f;
        target.angle[a] = chi.angle[b % chi.modulus];
    }
    if (f == 1) target.angle[0] = Rational(0);
    for (const auto& cand : characters_mod(f))
        if (cand.same_values(target)) return {f, cand};
    throw Error("conductor_and_primitivize: inducing character not found");
}

/// Gauss sum tau(chi) = sum_a chi(a) e^{2 pi i a / q}; requires a primitive
/// character (the modulus-sqrt identity fails otherwise).
inline std::complex<double> gauss_sum(const DirichletCharacter& chi) {
    if (!chi.primitive)
        throw PrimitivityError("gauss_sum: character must be primitive");
    if (chi.modulus == 1) return 1.0;
    std::complex<double> tau = 0.0;
    for (std::uint64_t a = 1; a < chi.modulus; ++a) {
        if (!chi.angle[a]) continue;
        const double theta =
            2.0 * M_PI *
            (chi.angle[a]->to_double() + static_cast<double>(a) / chi.modulus);
        tau += std::complex<double>(std::cos(theta), std::sin(theta));
    }
    return tau;
}

/// Exact multiplicativity check over the stored angle table.
inline bool verify_multiplicative(const DirichletCharacter& chi) {
    const std::uint64_t q = chi.modulus;
    for (std::uint64_t a = 0; a < q; ++a) {
        for (std::uint64_t b = 0; b < q; ++b) {
            const auto& va = chi.angle[a];
            const auto& vb = chi.angle[b];
            const auto& vab = chi.angle[a * b % q];
            if (va && vb) {
                if (!vab) return false;
                if (!(chardetail::angle_mod1(*va + *vb) ==
                      chardetail::angle_mod1(*vab)))
                    return false;
            } else if (vab) {
                return false;
            }
        }
    }
    return true;
}

/// Exact orthogonality: sum_a chi(a) = 0 for non-principal chi, tested by
/// cyclotomic reduction of the angle multiset.
inline bool verify_orthogonality(const DirichletCharacter& chi) {
    std::vector<Rational> angles;
    for (std::uint64_t a = 0; a < chi.modulus; ++a)
        if (chi.angle[a]) angles.push_back(*chi.angle[a]);
    const bool zero = root_of_unity_sum_is_zero(angles);
    return chi.is_principal() ? !zero : zero;
}

} // namespace lseries
