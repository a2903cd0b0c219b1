#include <catch2/catch.hpp>

#include <cmath>
#include <sstream>

#include "lseries/lfunction.hpp"
#include "lseries/zeros.hpp"

using namespace lseries;
using Cx = std::complex<double>;

namespace {

LFunctionDescriptor descriptor(std::uint64_t q, std::uint64_t idx) {
    return to_comparison_form(character(q, idx)).first;
}

// In-test scanner over an arbitrary ordinate window (used to check the
// mirror identity for a conjugate pair on negative ordinates).
std::vector<double> scan_window(const LFunctionDescriptor& L, double lo,
                                double hi, double h) {
    auto Z = rotated_line_function(L);
    std::vector<double> zeros;
    double t0 = lo, z0 = Z(t0);
    while (t0 < hi) {
        const double t1 = std::min(t0 + h, hi);
        const double z1 = Z(t1);
        if (z0 * z1 < 0.0) {
            double a = t0, b = t1, fa = z0;
            for (int i = 0; i < 60 && b - a > 1e-9; ++i) {
                const double m = 0.5 * (a + b), fm = Z(m);
                if (fa * fm < 0.0) b = m;
                else { a = m; fa = fm; }
            }
            zeros.push_back(0.5 * (a + b));
        }
        t0 = t1;
        z0 = z1;
    }
    return zeros;
}

} // namespace

TEST_CASE("rectangle zero counts by the argument principle") {
    auto d4 = descriptor(4, 1);

    SECTION("chi_4 has no zero below ordinate 5, one in [5, 8]") {
        REQUIRE(count_zeros_rectangle(d4, Rectangle(-1, 2, 1, 5)) == 0);
        REQUIRE(count_zeros_rectangle(d4, Rectangle(-1, 2, 5, 8)) == 1);
    }

    SECTION("rectangles to the right of the series bound are empty") {
        // for Re(s) > 2: |L - 1| <= sum_{n >= 2} n^{-2} < 1, so L != 0
        double bound = 0.0;
        for (int n = 2; n < 100000; ++n) bound += std::pow(n, -2.0);
        REQUIRE(bound < 1.0);
        REQUIRE(count_zeros_rectangle(d4, Rectangle(2.2, 3.2, 1.0, 9.5)) == 0);
    }

    SECTION("invalid rectangles and non-entire completions are rejected") {
        REQUIRE_THROWS_AS(Rectangle(2, 1, 0, 1), Error);
        auto induced = induced_descriptor(character(6, 1));
        REQUIRE_THROWS_AS(count_zeros_rectangle(induced, Rectangle(-1, 2, 1, 5)),
                          PrimitivityError);
    }

    SECTION("an exact zero on the contour is a boundary error") {
        REQUIRE_THROWS_AS(
            zerodetail::edge_winding([](Cx s) { return s; }, {-1.0, 0.0},
                                     {1.0, 0.0}, 8),
            BoundaryError);
    }
}

TEST_CASE("critical-line zero lists") {
    SECTION("zeta calibration: three zeros below 30, stable across grids") {
        auto zd = zeta_descriptor();
        auto coarse = critical_line_zeros(zd, 30.0, 0.05);
        auto fine = critical_line_zeros(zd, 30.0, 0.025);
        REQUIRE(coarse.entries.size() == 3);
        REQUIRE(fine.entries.size() == 3);
        REQUIRE(!coarse.off_line_or_missed);
        const double approx[] = {14.13, 21.02, 25.01};
        for (int i = 0; i < 3; ++i) {
            REQUIRE(std::abs(coarse.entries[i].ordinate -
                             fine.entries[i].ordinate) < 1e-4);
            REQUIRE(std::abs(coarse.entries[i].ordinate - approx[i]) < 5e-3);
            REQUIRE(coarse.entries[i].multiplicity == 1);
        }
    }

    SECTION("chi_3 zeros up to 10 are certified by their residuals") {
        auto list = critical_line_zeros(descriptor(3, 1), 10.0);
        REQUIRE(!list.entries.empty());
        for (const auto& e : list.entries) {
            REQUIRE(e.refined);
            REQUIRE(e.residual <= 1e-6);
        }
    }

    SECTION("scan-rectangle consistency for every implemented character") {
        for (auto [q, idx] : {std::pair<std::uint64_t, std::uint64_t>{3, 1},
                              {4, 1},
                              {5, 1},
                              {5, 2},
                              {5, 3}}) {
            auto list = critical_line_zeros(descriptor(q, idx), 20.0);
            REQUIRE(!list.off_line_or_missed);
            REQUIRE(list.total_multiplicity() ==
                    count_zeros_rectangle_robust(
                        descriptor(q, idx), Rectangle(-1, 2, 0.05, 20.0)));
        }
    }

    SECTION("no zeros at tiny heights") {
        auto list = critical_line_zeros(descriptor(3, 1), 0.1);
        REQUIRE(list.entries.empty());
        REQUIRE(!list.off_line_or_missed);
    }

    SECTION("monotone stability when T grows") {
        auto d = descriptor(4, 1);
        auto t20 = critical_line_zeros(d, 20.0);
        auto t30 = critical_line_zeros(d, 30.0);
        REQUIRE(t30.entries.size() > t20.entries.size());
        for (std::size_t i = 0; i < t20.entries.size(); ++i)
            REQUIRE(std::abs(t30.entries[i].ordinate -
                             t20.entries[i].ordinate) < 1e-7);
    }

    SECTION("real characters: conjugate recomputation is identical") {
        auto d = descriptor(3, 1);
        auto dbar = to_comparison_form(conjugate(character(3, 1))).first;
        auto a = critical_line_zeros(d, 15.0);
        auto b = critical_line_zeros(dbar, 15.0);
        REQUIRE(a.entries.size() == b.entries.size());
        for (std::size_t i = 0; i < a.entries.size(); ++i)
            REQUIRE(std::abs(a.entries[i].ordinate - b.entries[i].ordinate) <
                    1e-6);
    }

    SECTION("conjugate pair: ordinates mirror across the real axis") {
        // Lambda(conj s, chi)~ = Lambda(s, conj chi): the positive
        // ordinates of the conjugate character are the negated negative
        // ordinates of the original, not its positive ones.
        auto d51 = descriptor(5, 1);
        auto d53 = descriptor(5, 3);
        auto plus = critical_line_zeros(d53, 15.0);
        auto minus = scan_window(d51, -15.0, -0.05, 0.05);
        REQUIRE(!plus.entries.empty());
        REQUIRE(plus.entries.size() == minus.size());
        for (std::size_t i = 0; i < minus.size(); ++i) {
            const double mirrored = -minus[minus.size() - 1 - i];
            REQUIRE(std::abs(plus.entries[i].ordinate - mirrored) < 1e-6);
        }
        // and the positive lists of the pair genuinely differ
        auto plus51 = critical_line_zeros(d51, 15.0);
        bool same = plus51.entries.size() == plus.entries.size();
        if (same)
            for (std::size_t i = 0; i < plus.entries.size(); ++i)
                if (std::abs(plus51.entries[i].ordinate -
                             plus.entries[i].ordinate) > 1e-3)
                    same = false;
        REQUIRE(!same);
    }
}

TEST_CASE("zero multiset comparison") {
    auto make_list = [](std::vector<double> ts, double T) {
        ZeroList l;
        l.height_bound = T;
        for (double t : ts) l.entries.push_back({t, 1, true, 0.0});
        return l;
    };

    SECTION("identical lists match completely") {
        auto z = make_list({1.0, 2.0, 3.5}, 5.0);
        auto cmp = compare_zero_multisets(z, z, 1e-4);
        REQUIRE(cmp.matched.size() == 3);
        REQUIRE(cmp.only_in_1.empty());
        REQUIRE(cmp.only_in_2.empty());
    }

    SECTION("empty second list leaves everything in the first bucket") {
        auto z1 = make_list({1.0, 2.0}, 5.0);
        auto z2 = make_list({}, 5.0);
        auto cmp = compare_zero_multisets(z1, z2, 1e-4);
        REQUIRE(cmp.matched.empty());
        REQUIRE(cmp.only_in_1.size() == 2);
    }

    SECTION("height bounds must agree") {
        REQUIRE_THROWS_AS(compare_zero_multisets(make_list({}, 5.0),
                                                 make_list({}, 6.0), 1e-4),
                          Error);
    }

    SECTION("ambiguous near-collisions are reported and re-decided") {
        auto z1 = make_list({1.0}, 5.0);
        auto z2 = make_list({1.00005, 1.00009}, 5.0);
        auto cmp = compare_zero_multisets(z1, z2, 1e-4);
        REQUIRE(cmp.ambiguous.size() == 1);
        REQUIRE(cmp.matched.empty());  // 5e-5 gap fails the reduced tol
        REQUIRE(cmp.only_in_1.size() == 1);
        REQUIRE(cmp.only_in_2.size() == 2);

        auto z3 = make_list({2.0, 9.0}, 10.0);
        auto z4 = make_list({2.000003, 9.5}, 10.0);
        auto cmp2 = compare_zero_multisets(z3, z4, 1e-4);
        REQUIRE(cmp2.matched.size() == 1);  // survives the reduced tol
        REQUIRE(cmp2.only_in_1.size() == 1);
        REQUIRE(cmp2.only_in_2.size() == 1);
    }

    SECTION("chi_3 vs chi_4 share no zeros below 30") {
        auto z3 = critical_line_zeros(descriptor(3, 1), 30.0);
        auto z4 = critical_line_zeros(descriptor(4, 1), 30.0);
        auto cmp = compare_zero_multisets(z3, z4, 1e-4);
        REQUIRE(cmp.matched.empty());
        REQUIRE(!cmp.only_in_1.empty());
        REQUIRE(!cmp.only_in_2.empty());

        // unmatched zeros of L(chi_4) witness poles of the completed ratio
        auto witnesses =
            certify_pole_witnesses(descriptor(3, 1), cmp.only_in_2, 1e-4);
        for (const auto& w : witnesses) REQUIRE(w.certified);
    }
}

TEST_CASE("zero list CSV round trip") {
    ZeroList list;
    list.descriptor_id = "4.1";
    list.height_bound = 12.0;
    list.entries.push_back({6.020949, 1, true, 3.2e-11});
    list.entries.push_back({10.243770, 1, true, 5.0e-12});
    std::stringstream buf;
    write_zero_csv(buf, list);
    auto back = read_zero_csv(buf);
    REQUIRE(back.entries.size() == 2);
    REQUIRE(back.entries[0].ordinate == Approx(6.020949).epsilon(1e-9));
    REQUIRE(back.entries[1].multiplicity == 1);

    std::stringstream bad("wrong,header,row\n");
    REQUIRE_THROWS_AS(read_zero_csv(bad), Error);
}
