#include <catch2/catch.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "lseries/rational_function.hpp"

using namespace lseries;
using Cx = std::complex<double>;

namespace {

// Oracle: recombine a decomposition over the common denominator and compare
// coefficient vectors against the original numerator.
void check_recombination(const RationalFunction& F, const PartialFractions& pf,
                         double tol) {
    using namespace polydetail;
    // common denominator = product over (s - z_i)^{m_i}
    Poly den{1.0};
    for (const auto& g : pf.poles)
        for (int m = 0; m < g.multiplicity(); ++m)
            den = mul(den, Poly{-g.location, 1.0});
    Poly num = mul(pf.polynomial_part, den);
    for (const auto& g : pf.poles) {
        // (s - z_i)^{m_i - r} times the rest of the denominator
        for (int r = 1; r <= g.multiplicity(); ++r) {
            Poly partial{g.coefficients[r - 1]};
            for (const auto& h : pf.poles) {
                const int reps =
                    (&h == &g) ? h.multiplicity() - r : h.multiplicity();
                for (int m = 0; m < reps; ++m)
                    partial = mul(partial, Poly{-h.location, 1.0});
            }
            num = add(num, partial);
        }
    }
    double scale = 0.0;
    for (const auto& c : F.numerator) scale = std::max(scale, std::abs(c));
    scale = std::max(scale, 1.0);
    for (std::size_t i = 0; i < std::max(num.size(), F.numerator.size()); ++i) {
        const Cx a = i < num.size() ? num[i] : Cx(0);
        const Cx b = i < F.numerator.size() ? F.numerator[i] : Cx(0);
        REQUIRE(std::abs(a - b) <= tol * scale);
    }
}

} // namespace

TEST_CASE("partial fraction decompositions") {
    SECTION("1/(s^2+s) splits into 1/s - 1/(s+1)") {
        RationalFunction F({1.0}, {0.0, 1.0, 1.0});
        auto pf = partial_fractions(F);
        REQUIRE(polydetail::degree(pf.polynomial_part) <= 0);
        REQUIRE(std::abs(pf.polynomial_part.empty() ? Cx(0) : pf.polynomial_part[0]) <
                1e-12);
        REQUIRE(pf.poles.size() == 2);
        for (const auto& g : pf.poles) {
            REQUIRE(g.multiplicity() == 1);
            if (std::abs(g.location) < 0.5)
                REQUIRE(std::abs(g.coefficients[0] - Cx(1)) < 1e-10);
            else {
                REQUIRE(std::abs(g.location - Cx(-1)) < 1e-10);
                REQUIRE(std::abs(g.coefficients[0] - Cx(-1)) < 1e-10);
            }
        }
        check_recombination(F, pf, 1e-10);
    }

    SECTION("s/(s-1) = 1 + 1/(s-1)") {
        RationalFunction F({0.0, 1.0}, {-1.0, 1.0});
        auto pf = partial_fractions(F);
        REQUIRE(pf.polynomial_part.size() >= 1);
        REQUIRE(std::abs(pf.polynomial_part[0] - Cx(1)) < 1e-12);
        REQUIRE(pf.poles.size() == 1);
        REQUIRE(std::abs(pf.poles[0].location - Cx(1)) < 1e-10);
        REQUIRE(std::abs(pf.poles[0].coefficients[0] - Cx(1)) < 1e-10);
        check_recombination(F, pf, 1e-10);
    }

    SECTION("1/(s+1)^2 is already in partial-fraction form") {
        RationalFunction F({1.0}, {1.0, 2.0, 1.0});
        auto pf = partial_fractions(F);
        REQUIRE(pf.poles.size() == 1);
        REQUIRE(pf.poles[0].multiplicity() == 2);
        REQUIRE(std::abs(pf.poles[0].location - Cx(-1)) < 1e-7);
        REQUIRE(std::abs(pf.poles[0].coefficients[0]) < 1e-6);          // c_1 = 0
        REQUIRE(std::abs(pf.poles[0].coefficients[1] - Cx(1)) < 1e-6);  // c_2 = 1
        check_recombination(F, pf, 1e-6);
    }

    SECTION("random well-separated configurations round trip to 1e-8") {
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        for (int iter = 0; iter < 30; ++iter) {
            const int npoles = 1 + static_cast<int>(rng() % 4);
            Poly den{1.0};
            std::vector<Cx> roots;
            for (int i = 0; i < npoles; ++i) {
                for (int attempt = 0; attempt < 100; ++attempt) {
                    Cx z(2.0 * unit(rng), 2.0 * unit(rng));
                    bool ok = true;
                    for (const auto& w : roots)
                        if (std::abs(z - w) < 0.3) ok = false;
                    if (ok) {
                        roots.push_back(z);
                        break;
                    }
                }
            }
            for (const auto& z : roots)
                den = polydetail::mul(den, Poly{-z, 1.0});
            Poly num;
            const int dnum = static_cast<int>(rng() % (roots.size() + 1));
            for (int i = 0; i <= dnum; ++i) num.push_back(Cx(unit(rng), unit(rng)));
            if (polydetail::degree(num) < 0) num = Poly{1.0};
            RationalFunction F(num, den);
            auto pf = partial_fractions(F);
            check_recombination(F, pf, 1e-8);
        }
    }

    SECTION("true multiple roots are recognized as one pole") {
        // (s+1)^3: the root estimates spread like eps^{1/3} but must still
        // come back as a single multiplicity-3 pole
        RationalFunction F({2.0}, {1.0, 3.0, 3.0, 1.0});
        auto pf = partial_fractions(F);
        REQUIRE(pf.poles.size() == 1);
        REQUIRE(pf.poles[0].multiplicity() == 3);
        REQUIRE(std::abs(pf.poles[0].location - Cx(-1)) < 1e-6);
        REQUIRE(std::abs(pf.poles[0].coefficients[2] - Cx(2)) < 1e-6);
    }

    SECTION("an unresolvable root cloud is flagged ill-conditioned") {
        // six distinct roots spaced 3e-4 apart: too close to locate as
        // simple roots (their joint condition number is huge) but too far
        // apart for any merged multiple-root model, so no clustering
        // scale reproduces F
        Poly den{1.0};
        for (int k = 0; k < 6; ++k)
            den = polydetail::mul(den, Poly{Cx(-1.0 - 3e-4 * k), 1.0});
        RationalFunction F({1.0}, den);
        REQUIRE_THROWS_AS(partial_fractions(F), IllConditionedError);
    }

    SECTION("zero denominator is rejected") {
        REQUIRE_THROWS_AS(RationalFunction({1.0}, {0.0}), Error);
    }
}

TEST_CASE("inverse Laplace of rational transforms") {
    SECTION("1/(s+1)^2 inverts to t e^{-t}") {
        RationalFunction F({1.0}, {1.0, 2.0, 1.0});
        auto density = inverse_laplace_rational(F);
        REQUIRE(std::abs(density.atom_at_zero) < 1e-12);
        for (double t : {0.1, 0.5, 1.0, 2.5, 7.0})
            REQUIRE(std::abs(density.eval(t) - t * std::exp(-t)) < 1e-6);
        // quadrature oracle reproduces F at s = 0, 1, 2
        for (double s : {0.0, 1.0, 2.0}) {
            const auto got = laplace_numeric(density, {s, 0.0});
            REQUIRE(std::abs(got - F.eval({s, 0.0})) < 1e-6);
        }
    }

    SECTION("1/(s+1) inverts to e^{-t}") {
        RationalFunction F({1.0}, {1.0, 1.0});
        auto density = inverse_laplace_rational(F);
        for (double t : {0.0, 1.0, 3.0})
            REQUIRE(std::abs(density.eval(t) - std::exp(-t)) < 1e-8);
        for (double s : {0.0, 0.7, 2.0}) {
            const auto got = laplace_numeric(density, {s, 0.0});
            REQUIRE(std::abs(got - F.eval({s, 0.0})) < 1e-6);
        }
    }

    SECTION("a constant is a pure atom at zero") {
        RationalFunction F({3.0, 3.0}, {1.0, 1.0});  // == 3
        auto density = inverse_laplace_rational(F);
        REQUIRE(density.terms.empty());
        REQUIRE(std::abs(density.atom_at_zero - Cx(3.0)) < 1e-10);
    }

    SECTION("non-constant polynomial part is not a Laplace transform") {
        RationalFunction F({0.0, 0.0, 0.0, 1.0}, {1.0, 1.0});  // s^3/(s+1)
        REQUIRE_THROWS_AS(inverse_laplace_rational(F), NotLaplaceError);
    }

    SECTION("evaluation abscissa must clear the rightmost pole") {
        RationalFunction F({1.0}, {-1.0, 1.0});  // 1/(s-1), pole at 1
        auto density = inverse_laplace_rational(F);
        REQUIRE_THROWS_AS(laplace_numeric(density, {0.5, 0.0}), Error);
        REQUIRE(std::abs(laplace_numeric(density, {2.0, 0.0}) -
                         F.eval({2.0, 0.0})) < 1e-6);
    }
}
