#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "lseries/dirichlet_series.hpp"
#include "lseries/errors.hpp"

namespace lseries {

/// Finite atomic measure on [0, inf): atoms (t_k, c_k) with t_k >= 0
/// strictly increasing. Total variation is the sum of |c_k|.
struct DiscreteMeasure {
    struct Atom {
        double t;
        std::complex<double> c;
    };
    std::vector<Atom> atoms;

    DiscreteMeasure() = default;
    explicit DiscreteMeasure(std::vector<Atom> a) : atoms(std::move(a)) {
        validate();
    }
    DiscreteMeasure(std::initializer_list<Atom> a) : atoms(a) { validate(); }

    void validate() const {
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if (!(atoms[i].t >= 0.0))
                throw Error("DiscreteMeasure: atom positions must be >= 0");
            if (i > 0 && !(atoms[i - 1].t < atoms[i].t))
                throw Error("DiscreteMeasure: atom positions must be strictly increasing");
        }
    }
};

/// Laplace transform L mu(s) = sum c_k e^{-s t_k}.
inline std::complex<double> laplace(const DiscreteMeasure& mu,
                                    std::complex<double> s) {
    std::complex<double> v = 0.0;
    for (const auto& atom : mu.atoms) v += atom.c * std::exp(-s * atom.t);
    return v;
}

inline double total_variation(const DiscreteMeasure& mu) {
    double tv = 0.0;
    for (const auto& atom : mu.atoms) tv += std::abs(atom.c);
    return tv;
}

/// Measure carrying the coefficients of an ODS at positions log n, so that
/// laplace(measure, s) agrees with evaluating the series at s.
template <typename T>
DiscreteMeasure measure_from_series(const DirichletSeries<T>& series) {
    DiscreteMeasure mu;
    for (std::size_t n = 1; n <= series.truncation(); ++n) {
        const auto c = CoeffTraits<T>::to_complex(series.a(n));
        if (c == std::complex<double>(0.0, 0.0)) continue;
        mu.atoms.push_back({std::log(static_cast<double>(n)), c});
    }
    return mu;
}

/// Max over the grid of |L mu1(s) - L mu2(s)|; zero iff the transforms
/// agree on the grid.
inline double uniqueness_gap(const DiscreteMeasure& mu1,
                             const DiscreteMeasure& mu2,
                             const std::vector<double>& grid) {
    if (grid.empty()) throw Error("uniqueness_gap: grid must be nonempty");
    double gap = 0.0;
    for (double s : grid)
        gap = std::max(gap, std::abs(laplace(mu1, s) - laplace(mu2, s)));
    return gap;
}

} // namespace lseries
