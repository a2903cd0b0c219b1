#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "lseries/errors.hpp"

namespace lseries {

using Poly = std::vector<std::complex<double>>;  // ascending degree

namespace polydetail {

inline int degree(const Poly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != std::complex<double>(0.0, 0.0)) return i;
    return -1;
}

inline Poly trimmed(Poly p, double tol = 0.0) {
    while (!p.empty() && std::abs(p.back()) <= tol) p.pop_back();
    if (p.empty()) p.push_back(0.0);
    return p;
}

inline std::complex<double> eval(const Poly& p, std::complex<double> s) {
    std::complex<double> v = 0.0;
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) v = v * s + p[i];
    return v;
}

inline Poly mul(const Poly& a, const Poly& b) {
    Poly c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

inline Poly add(const Poly& a, const Poly& b) {
    Poly c(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] += b[i];
    return c;
}

/// Long division a = q * b + r with deg r < deg b.
inline void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    const int db = degree(b);
    if (db < 0) throw DivisionError("polynomial division by zero");
    r = a;
    int dr = degree(r);
    q.assign(std::max(dr - db + 1, 1), 0.0);
    while (dr >= db) {
        const auto f = r[dr] / b[db];
        q[dr - db] = f;
        for (int i = 0; i <= db; ++i) r[dr - db + i] -= f * b[i];
        r[dr] = 0.0;
        dr = degree(r);
    }
    r = trimmed(r);
}

/// Taylor coefficients of p around z (repeated synthetic division).
inline Poly taylor_shift(const Poly& p, std::complex<double> z) {
    Poly work = p, out(p.size(), 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) {
        // synthetic division of work by (s - z); remainder is work(z)
        std::complex<double> carry = 0.0;
        for (int i = static_cast<int>(work.size()) - 1; i >= 0; --i) {
            const auto tmp = work[i] + carry * z;
            work[i] = carry;
            carry = tmp;
        }
        out[k] = carry;
        if (!work.empty()) work.pop_back();
        if (work.empty()) break;
    }
    return out;
}

} // namespace polydetail

/// Rational function as numerator / denominator coefficient vectors,
/// ascending degree. The denominator is normalized monic on construction.
struct RationalFunction {
    Poly numerator;
    Poly denominator;

    RationalFunction(Poly num, Poly den)
        : numerator(std::move(num)), denominator(std::move(den)) {
        using namespace polydetail;
        const int dd = degree(denominator);
        if (dd < 0)
            throw Error("RationalFunction: denominator is identically zero");
        const auto lc = denominator[dd];
        for (auto& c : denominator) c /= lc;
        for (auto& c : numerator) c /= lc;
        denominator = trimmed(denominator);
        numerator = trimmed(numerator);
    }

    std::complex<double> eval(std::complex<double> s) const {
        return polydetail::eval(numerator, s) / polydetail::eval(denominator, s);
    }
};

/// Durand-Kerner simultaneous iteration for the roots of a monic polynomial.
inline std::vector<std::complex<double>> polynomial_roots(const Poly& monic) {
    using namespace polydetail;
    const int n = degree(monic);
    if (n < 1) return {};
    double radius = 0.0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(monic[i]));
    radius = 1.0 + radius;

    std::vector<std::complex<double>> z(n);
    for (int k = 0; k < n; ++k)
        z[k] = radius * std::polar(0.7, 2.0 * M_PI * k / n + 0.4);
    for (int iter = 0; iter < 600; ++iter) {
        double biggest = 0.0;
        for (int k = 0; k < n; ++k) {
            std::complex<double> denom = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != k) denom *= z[k] - z[j];
            const auto step = eval(monic, z[k]) / denom;
            z[k] -= step;
            biggest = std::max(biggest, std::abs(step) / (1.0 + std::abs(z[k])));
        }
        if (biggest < 1e-14) break;
    }
    return z;
}

struct PoleGroup {
    std::complex<double> location;                 // z_i
    std::vector<std::complex<double>> coefficients; // c_{1,i} .. c_{n_i,i}
    int multiplicity() const { return static_cast<int>(coefficients.size()); }
};

struct PartialFractions {
    Poly polynomial_part;
    std::vector<PoleGroup> poles;

    std::complex<double> eval(std::complex<double> s) const {
        auto v = polydetail::eval(polynomial_part, s);
        for (const auto& g : poles) {
            const auto w = s - g.location;
            std::complex<double> inv = 1.0;
            for (int r = 1; r <= g.multiplicity(); ++r) {
                inv /= w;
                v += g.coefficients[r - 1] * inv;
            }
        }
        return v;
    }
};

namespace polydetail {

inline Poly derivative(const Poly& p) {
    if (p.size() <= 1) return Poly{0.0};
    Poly d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i)
        d[i - 1] = p[i] * static_cast<double>(i);
    return d;
}

/// Refine the center of a multiplicity-m cluster: an m-fold root of p is a
/// simple root of p^{(m-1)}, where Newton converges quadratically.
inline std::complex<double> polish_cluster(const Poly& den,
                                           std::complex<double> z, int m) {
    Poly p = den;
    for (int k = 1; k < m; ++k) p = derivative(p);
    const Poly dp = derivative(p);
    for (int iter = 0; iter < 60; ++iter) {
        const auto pv = eval(p, z);
        const auto dv = eval(dp, z);
        if (std::abs(dv) == 0.0) break;
        const auto step = pv / dv;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        z -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
    }
    return z;
}

/// Greedy clustering of root estimates at the given radius.
inline std::vector<std::pair<std::complex<double>, int>>
cluster_roots(const std::vector<std::complex<double>>& roots, double radius) {
    std::vector<bool> used(roots.size(), false);
    std::vector<std::pair<std::complex<double>, int>> clusters;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        std::complex<double> sum = roots[i];
        int count = 1;
        used[i] = true;
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(roots[j] - sum / static_cast<double>(count)) < radius) {
                sum += roots[j];
                ++count;
                used[j] = true;
            }
        }
        clusters.emplace_back(sum / static_cast<double>(count), count);
    }
    return clusters;
}

/// 16 probe points away from the poles; true when the decomposition
/// reproduces F there to 1e-8 relative.
inline bool residual_ok(const RationalFunction& F, const PartialFractions& pf,
                        double scale) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    int accepted = 0;
    for (int draws = 0; accepted < 16 && draws < 1000; ++draws) {
        std::complex<double> s(3.0 * scale * unit(rng), 3.0 * scale * unit(rng));
        double mindist = 1e300;
        for (const auto& g : pf.poles)
            mindist = std::min(mindist, std::abs(s - g.location));
        if (mindist < 0.3 * scale) continue;
        ++accepted;
        const auto truth = F.eval(s);
        if (std::abs(pf.eval(s) - truth) > 1e-8 * (1.0 + std::abs(truth)))
            return false;
    }
    return accepted > 0;
}

} // namespace polydetail

/// Partial fraction decomposition F = P + sum_i sum_r c_{r,i}/(s-z_i)^r.
///
/// Root estimates are clustered into multiplicity groups, trying coarse
/// radii first so genuine multiple roots (whose estimates spread like
/// eps^{1/m}) are recognized as one pole. A clustering is accepted only if
/// the decomposition reproduces F at 16 probe points to 1e-8 relative;
/// when no clustering scale achieves that, the root configuration is
/// reported as ill-conditioned.
inline PartialFractions partial_fractions(const RationalFunction& F) {
    using namespace polydetail;
    const int dden = degree(F.denominator);
    if (dden < 1)
        throw Error("partial_fractions: denominator degree must be >= 1");

    Poly polynomial_part, rem;
    divmod(F.numerator, F.denominator, polynomial_part, rem);
    polynomial_part = trimmed(polynomial_part);

    const auto roots = polynomial_roots(F.denominator);
    double scale = 1.0;
    for (const auto& r : roots) scale = std::max(scale, std::abs(r));

    for (double rel_radius : {3e-4, 1e-5, 3e-7, 1e-9, 0.0}) {
        auto clusters = cluster_roots(roots, rel_radius * scale);
        for (auto& [center, count] : clusters)
            center = polish_cluster(F.denominator, center, count);
        PartialFractions out;
        out.polynomial_part = polynomial_part;
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            // D_i = product over the other clusters of (s - z_j)^{m_j}
            Poly di{1.0};
            for (std::size_t j = 0; j < clusters.size(); ++j) {
                if (j == i) continue;
                for (int m = 0; m < clusters[j].second; ++m)
                    di = mul(di, Poly{-clusters[j].first, 1.0});
            }
            const int m = clusters[i].second;
            const auto nt = taylor_shift(rem, clusters[i].first);
            const auto dt = taylor_shift(di, clusters[i].first);
            // series division nt/dt to order m-1
            std::vector<std::complex<double>> e(m, 0.0);
            for (int k = 0; k < m; ++k) {
                std::complex<double> acc =
                    k < static_cast<int>(nt.size()) ? nt[k] : 0.0;
                for (int j = 0; j < k; ++j) {
                    const int idx = k - j;
                    if (idx < static_cast<int>(dt.size())) acc -= e[j] * dt[idx];
                }
                e[k] = acc / dt[0];
            }
            PoleGroup g;
            g.location = clusters[i].first;
            g.coefficients.resize(m);
            for (int r = 1; r <= m; ++r) g.coefficients[r - 1] = e[m - r];
            out.poles.push_back(std::move(g));
        }
        if (residual_ok(F, out, scale)) return out;
    }
    throw IllConditionedError(
        "partial_fractions: no clustering of the computed roots reproduces F "
        "to 1e-8 relative; root configuration is too ill-conditioned");
}

/// Inverse Laplace density sum_i sum_r c_{r,i} t^{r-1} e^{z_i t}/(r-1)!,
/// plus the constant atom at t = 0 coming from the polynomial part.
struct ExponentialDensity {
    struct Term {
        std::complex<double> c;
        std::complex<double> z;
        int power;  // r >= 1, contributes c t^{r-1} e^{z t}/(r-1)!
    };
    std::complex<double> atom_at_zero;  // ell * delta_0
    std::vector<Term> terms;

    std::complex<double> eval(double t) const {
        std::complex<double> v = 0.0;
        for (const auto& term : terms) {
            double fact = 1.0;
            for (int k = 2; k < term.power; ++k) fact *= k;
            v += term.c * std::pow(t, term.power - 1) * std::exp(term.z * t) /
                 fact;
        }
        return v;
    }

    double max_growth_rate() const {
        double a = -1e300;
        for (const auto& term : terms) a = std::max(a, term.z.real());
        return terms.empty() ? 0.0 : a;
    }
};

/// Invert a rational Laplace transform. The polynomial part must be a
/// constant: anything of degree >= 1 is not the transform of a density
/// plus a point mass at zero.
inline ExponentialDensity inverse_laplace_rational(const RationalFunction& F) {
    auto pf = partial_fractions(F);
    if (polydetail::degree(pf.polynomial_part) > 0)
        throw NotLaplaceError(
            "inverse_laplace_rational: non-constant polynomial part");
    ExponentialDensity density;
    density.atom_at_zero =
        pf.polynomial_part.empty() ? 0.0 : pf.polynomial_part[0];
    for (const auto& g : pf.poles)
        for (int r = 1; r <= g.multiplicity(); ++r) {
            if (std::abs(g.coefficients[r - 1]) == 0.0) continue;
            density.terms.push_back({g.coefficients[r - 1], g.location, r});
        }
    return density;
}

namespace quaddetail {

template <typename F>
std::complex<double> adaptive_simpson(const F& f, double a, double b,
                                      std::complex<double> fa,
                                      std::complex<double> fm,
                                      std::complex<double> fb, double eps,
                                      int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const auto flm = f(lm), frm = f(rm);
    const auto whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const auto left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const auto right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * eps)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, eps / 2, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, eps / 2, depth - 1);
}

} // namespace quaddetail

/// Numerical Laplace transform of the density at s (excluding the atom),
/// integrating on [0, T] with T chosen so the integrand tail is < 1e-12.
/// Requires Re(s) > max Re(z_i).
inline std::complex<double> laplace_numeric(const ExponentialDensity& density,
                                            std::complex<double> s,
                                            double tol = 1e-9) {
    if (density.terms.empty()) return 0.0;
    const double alpha = density.max_growth_rate();
    if (s.real() <= alpha)
        throw Error("laplace_numeric: need Re(s) > max Re(z_i)");

    const double decay = s.real() - alpha;
    double amp = 0.0;
    int maxpow = 1;
    for (const auto& term : density.terms) {
        amp += std::abs(term.c);
        maxpow = std::max(maxpow, term.power);
    }
    double T = 16.0 / decay;
    while (amp * std::pow(T, maxpow - 1) * std::exp(-decay * T) * (2.0 / decay) >
           1e-12) {
        T *= 1.5;
        if (T > 1e5)
            throw PrecisionError("laplace_numeric: integrand tail will not die");
    }
    auto f = [&](double t) { return density.eval(t) * std::exp(-s * t); };
    // panelling guards against spurious early convergence of the estimator
    std::complex<double> total = 0.0;
    const int panels = 16;
    for (int p = 0; p < panels; ++p) {
        const double a = T * p / panels, b = T * (p + 1) / panels;
        total += quaddetail::adaptive_simpson(
            f, a, b, f(a), f(0.5 * (a + b)), f(b), tol / (15.0 * panels), 40);
    }
    return total;
}

} // namespace lseries
