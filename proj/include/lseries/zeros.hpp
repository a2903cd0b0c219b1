#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "lseries/errors.hpp"
#include "lseries/lfunction.hpp"

namespace lseries {

struct Rectangle {
    double re_min, re_max, im_min, im_max;

    Rectangle(double rmin, double rmax, double imin, double imax)
        : re_min(rmin), re_max(rmax), im_min(imin), im_max(imax) {
        if (!(re_min < re_max && im_min < im_max))
            throw Error("Rectangle: need re_min < re_max and im_min < im_max");
    }
};

namespace zerodetail {

/// Accumulated argument of f along the segment z0 -> z1, refining until
/// every phase step is below pi/2. Throws BoundaryError when refinement
/// bottoms out (a zero sits on or nearly on the segment).
inline double edge_winding(const std::function<Cxd(Cxd)>& f, Cxd z0, Cxd z1,
                           int samples) {
    struct Node {
        double t0, t1;
        Cxd f0, f1;
        int depth;
    };
    auto point = [&](double t) { return z0 + t * (z1 - z0); };
    std::vector<Node> stack;
    std::vector<Cxd> vals(samples + 1);
    for (int i = 0; i <= samples; ++i) {
        vals[i] = f(point(static_cast<double>(i) / samples));
        if (std::abs(vals[i]) == 0.0)
            throw BoundaryError("edge_winding: exact zero on the contour");
    }
    for (int i = samples - 1; i >= 0; --i)
        stack.push_back({static_cast<double>(i) / samples,
                         static_cast<double>(i + 1) / samples, vals[i],
                         vals[i + 1], 0});
    double total = 0.0;
    while (!stack.empty()) {
        Node n = stack.back();
        stack.pop_back();
        const double dphi = std::arg(n.f1 / n.f0);
        if (std::abs(dphi) < M_PI / 2) {
            total += dphi;
            continue;
        }
        if (n.depth >= 42)
            throw BoundaryError(
                "edge_winding: phase step will not settle; contour too close "
                "to a zero");
        const double tm = 0.5 * (n.t0 + n.t1);
        const Cxd fm = f(point(tm));
        if (std::abs(fm) == 0.0)
            throw BoundaryError("edge_winding: exact zero on the contour");
        stack.push_back({tm, n.t1, fm, n.f1, n.depth + 1});
        stack.push_back({n.t0, tm, n.f0, fm, n.depth + 1});
    }
    return total;
}

} // namespace zerodetail

/// Zeros of the entire completion inside the rectangle, with multiplicity,
/// by the argument principle along the boundary.
inline int count_zeros_rectangle(const LFunctionDescriptor& L,
                                 const Rectangle& rect) {
    if (!L.has_entire_completion())
        throw PrimitivityError(
            "count_zeros_rectangle: completed function must be entire "
            "(primitive non-principal character, or the zeta path)");
    auto f = [&](Cxd s) { return L.completed(s); };
    const Cxd c1(rect.re_min, rect.im_min), c2(rect.re_max, rect.im_min),
        c3(rect.re_max, rect.im_max), c4(rect.re_min, rect.im_max);
    auto edge_samples = [](Cxd a, Cxd b) {
        return std::max(8, static_cast<int>(4.0 * std::abs(b - a)));
    };
    double total = 0.0;
    total += zerodetail::edge_winding(f, c1, c2, edge_samples(c1, c2));
    total += zerodetail::edge_winding(f, c2, c3, edge_samples(c2, c3));
    total += zerodetail::edge_winding(f, c3, c4, edge_samples(c3, c4));
    total += zerodetail::edge_winding(f, c4, c1, edge_samples(c4, c1));
    const double winding = total / (2.0 * M_PI);
    const long count = std::lround(winding);
    if (std::abs(winding - count) > 0.05 || count < 0)
        throw BoundaryError("count_zeros_rectangle: winding did not settle on "
                            "an integer; boundary too close to a zero");
    return static_cast<int>(count);
}

/// Retry wrapper: nudges the rectangle per the documented policy (+-0.01
/// steps, at most 5 retries) when the boundary lands too close to a zero.
/// Only the imaginary edges move, so the returned count refers to a
/// slightly perturbed window; callers treat the window as approximate.
inline int count_zeros_rectangle_robust(const LFunctionDescriptor& L,
                                        Rectangle rect) {
    double nudge = 0.01;
    for (int attempt = 0;; ++attempt) {
        try {
            return count_zeros_rectangle(L, rect);
        } catch (const BoundaryError&) {
            if (attempt >= 5) throw;
            rect.im_min = std::max(1e-4, rect.im_min - nudge);
            rect.im_max += nudge;
            nudge = -nudge * 1.5;
        }
    }
}

struct ZeroEntry {
    double ordinate;
    int multiplicity;
    bool refined;
    double residual;  // |Z(t*)| relative to the local scale of Z
};

struct ZeroList {
    std::string descriptor_id;
    double height_bound = 0.0;
    std::vector<ZeroEntry> entries;
    bool off_line_or_missed = false;  // line scan and rectangle count disagree
    std::string diagnostic;

    int total_multiplicity() const {
        int m = 0;
        for (const auto& e : entries) m += e.multiplicity;
        return m;
    }
};

/// Real-valued rotation of the completed function on the critical line:
/// Lambda(1/2 + it) = W conj(Lambda(1/2 + it)) forces e^{-i arg(W)/2}
/// Lambda(1/2 + it) to be real, so the continuously tracked phase is the
/// constant -arg(W)/2.
inline std::function<double(double)>
rotated_line_function(const LFunctionDescriptor& L) {
    const double phase = -0.5 * std::arg(L.root_number_value);
    const Cxd rot = std::polar(1.0, phase);
    return [&L, rot](double t) {
        return (rot * L.completed(Cxd(0.5, 0.0) + Cxd(0.0, 1.0) * t)).real();
    };
}

/// Critical-line zero list up to height T: sign changes of the rotated
/// completion on a grid, refined by bisection to 1e-8, each zero certified
/// by its residual against the local scale; the count is cross-checked
/// against the rectangle [-1, 2] x [delta, T]. A persistent mismatch sets
/// off_line_or_missed instead of silently reconciling.
inline ZeroList critical_line_zeros(const LFunctionDescriptor& L, double T,
                                    double grid_step = 0.05) {
    if (!(T > 0.0)) throw Error("critical_line_zeros: T must be positive");
    ZeroList list;
    list.descriptor_id = L.id;
    list.height_bound = T;
    const double delta = 0.05;
    auto Z = rotated_line_function(L);

    auto scan = [&](double h) {
        std::vector<double> zeros;
        if (T <= delta) return zeros;
        double t0 = delta, z0 = Z(t0);
        const int steps = static_cast<int>(std::ceil((T - delta) / h));
        for (int i = 1; i <= steps; ++i) {
            const double t1 = std::min(delta + i * h, T);
            const double z1 = Z(t1);
            if (z0 == 0.0) {
                zeros.push_back(t0);
            } else if (z0 * z1 < 0.0) {
                double lo = t0, hi = t1, flo = z0;
                for (int iter = 0; iter < 60; ++iter) {
                    const double mid = 0.5 * (lo + hi);
                    const double fm = Z(mid);
                    if (fm == 0.0) { lo = hi = mid; break; }
                    if (flo * fm < 0.0) hi = mid;
                    else { lo = mid; flo = fm; }
                    if (hi - lo < 1e-9) break;
                }
                zeros.push_back(0.5 * (lo + hi));
            }
            t0 = t1;
            z0 = z1;
        }
        return zeros;
    };

    const int rect_count =
        T > delta
            ? count_zeros_rectangle_robust(L, Rectangle(-1.0, 2.0, delta, T))
            : 0;

    double h = grid_step;
    std::vector<double> zeros;
    for (int attempt = 0; attempt < 4; ++attempt) {
        zeros = scan(h);
        if (static_cast<int>(zeros.size()) == rect_count) break;
        h *= 0.5;
    }

    std::vector<int> mult(zeros.size(), 1);
    if (static_cast<int>(zeros.size()) != rect_count) {
        // multiplicity assignment through narrow rectangle counts
        int assigned = 0;
        for (std::size_t i = 0; i < zeros.size(); ++i) {
            try {
                mult[i] = count_zeros_rectangle_robust(
                    L, Rectangle(-1.0, 2.0, zeros[i] - 0.02, zeros[i] + 0.02));
            } catch (const BoundaryError&) {
                mult[i] = 1;
            }
            assigned += mult[i];
        }
        if (assigned != rect_count) {
            list.off_line_or_missed = true;
            std::ostringstream diag;
            diag << "line scan found " << zeros.size()
                 << " sign changes (total multiplicity " << assigned
                 << ") but the rectangle count is " << rect_count
                 << "; possible off-line or missed zeros";
            list.diagnostic = diag.str();
        }
    }

    for (std::size_t i = 0; i < zeros.size(); ++i) {
        const double t = zeros[i];
        double local = 0.0;
        for (int j = -5; j <= 5; ++j)
            local = std::max(local, std::abs(Z(t + 0.1 * j)));
        const double res = local > 0.0 ? std::abs(Z(t)) / local : 0.0;
        list.entries.push_back({t, mult[i], true, res});
    }
    return list;
}

struct ZeroComparison {
    std::vector<std::pair<double, double>> matched;
    std::vector<double> only_in_1;
    std::vector<double> only_in_2;
    std::vector<std::pair<double, double>> ambiguous;  // reported, then
                                                       // resolved at tol/10
};

/// Greedy ordinate-ordered matching within tol. Ambiguous configurations
/// (a second candidate inside tol) are reported and re-decided at tol/10.
inline ZeroComparison compare_zero_multisets(const ZeroList& z1,
                                             const ZeroList& z2, double tol) {
    if (std::abs(z1.height_bound - z2.height_bound) > 1e-12)
        throw Error("compare_zero_multisets: lists must share the height bound");
    ZeroComparison out;
    std::size_t i = 0, j = 0;
    const auto& a = z1.entries;
    const auto& b = z2.entries;
    while (i < a.size() && j < b.size()) {
        const double d = a[i].ordinate - b[j].ordinate;
        if (std::abs(d) <= tol) {
            const bool amb =
                (j + 1 < b.size() &&
                 std::abs(a[i].ordinate - b[j + 1].ordinate) <= tol) ||
                (i + 1 < a.size() &&
                 std::abs(a[i + 1].ordinate - b[j].ordinate) <= tol);
            if (amb) {
                out.ambiguous.emplace_back(a[i].ordinate, b[j].ordinate);
                if (std::abs(d) > tol / 10.0) {
                    // at the reduced tolerance these are distinct zeros
                    if (d < 0) out.only_in_1.push_back(a[i++].ordinate);
                    else out.only_in_2.push_back(b[j++].ordinate);
                    continue;
                }
            }
            out.matched.emplace_back(a[i].ordinate, b[j].ordinate);
            ++i;
            ++j;
        } else if (d < 0) {
            out.only_in_1.push_back(a[i++].ordinate);
        } else {
            out.only_in_2.push_back(b[j++].ordinate);
        }
    }
    while (i < a.size()) out.only_in_1.push_back(a[i++].ordinate);
    while (j < b.size()) out.only_in_2.push_back(b[j++].ordinate);
    return out;
}

struct PoleWitness {
    double ordinate;        // zero of L2's completion
    double numerator_mag;   // |Lambda_1| there
    double threshold;       // 10 tol |Lambda_1'| scale
    bool certified;
};

/// Certify ratio poles: at a zero of Lambda_2, the ratio Lambda_1/Lambda_2
/// has a pole provided Lambda_1 does not vanish there; the check compares
/// |Lambda_1| against a derivative-scaled threshold.
inline std::vector<PoleWitness>
certify_pole_witnesses(const LFunctionDescriptor& L1,
                       const std::vector<double>& ordinates, double tol) {
    std::vector<PoleWitness> out;
    const double h = 1e-4;
    for (double t : ordinates) {
        const Cxd s(0.5, t);
        const double mag = std::abs(L1.completed(s));
        const double deriv =
            std::abs(L1.completed(s + Cxd(0, h)) - L1.completed(s - Cxd(0, h))) /
            (2.0 * h);
        const double threshold = 10.0 * tol * deriv;
        out.push_back({t, mag, threshold, mag > threshold});
    }
    return out;
}

// CSV format: header `ordinate,multiplicity,residual`, LF line ends.

inline void write_zero_csv(std::ostream& os, const ZeroList& list) {
    os << "ordinate,multiplicity,residual\n";
    os.precision(12);
    for (const auto& e : list.entries)
        os << std::fixed << e.ordinate << ',' << e.multiplicity << ','
           << std::scientific << e.residual << '\n';
    os << std::defaultfloat;
}

inline ZeroList read_zero_csv(std::istream& is) {
    ZeroList list;
    std::string line;
    if (!std::getline(is, line) || line != "ordinate,multiplicity,residual")
        throw Error("zero CSV: missing or wrong header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        ZeroEntry e{0, 0, true, 0};
        char c1 = 0, c2 = 0;
        if (!(row >> e.ordinate >> c1 >> e.multiplicity >> c2 >> e.residual) ||
            c1 != ',' || c2 != ',')
            throw Error("zero CSV: bad row: " + line);
        list.entries.push_back(e);
        list.height_bound = std::max(list.height_bound, e.ordinate);
    }
    return list;
}

} // namespace lseries
