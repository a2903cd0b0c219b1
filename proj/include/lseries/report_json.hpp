#pragma once

#include <json.hpp>

#include "lseries/hamburger.hpp"
#include "lseries/io.hpp"
#include "lseries/zeros.hpp"

namespace lseries {

inline const char* to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Verified: return "VERIFIED";
        case VerdictStatus::Refuted: return "REFUTED";
        case VerdictStatus::Inapplicable: return "INAPPLICABLE";
    }
    return "?";
}

/// Hypotheses of the theorem that coefficient data cannot check; they ride
/// along in every verdict so a reader knows what "verified up to M" rests
/// on.
inline nlohmann::ordered_json unchecked_hypotheses_json() {
    return nlohmann::ordered_json::array(
        {"ratio and dual ratio are representable by ordinary Dirichlet "
         "series (assumed, not derivable from finitely many coefficients)",
         "finite order of the ratio in the critical strip (not numerically "
         "checkable from coefficients)"});
}

inline nlohmann::ordered_json to_json(const HamburgerVerdict& v) {
    nlohmann::ordered_json j;
    j["status"] = to_string(v.status);
    j["N"] = {v.ratio_num, v.ratio_den};
    j["checked_up_to"] = v.checked_up_to;
    j["exact_mode"] = v.exact_mode;
    j["detector_only"] = v.detector_only;
    if (v.status == VerdictStatus::Verified) {
        j["polynomial"] = to_json(v.polynomial);
        j["pointwise_residual"] = v.pointwise_residual;
    }
    if (v.status == VerdictStatus::Refuted) {
        if (v.witness_index) j["witness"] = {{"coefficient_index", *v.witness_index}};
        else if (v.witness_ordinate) j["witness"] = {{"zero_ordinate", *v.witness_ordinate}};
        j["interpretation"] =
            "either a hypothesis fails (the ratios need not be ODS-"
            "representable) or the conclusion fails; coefficient data cannot "
            "tell the two apart";
    }
    if (v.status == VerdictStatus::Inapplicable)
        j["reason"] = v.inapplicable_reason;
    j["unchecked_hypotheses"] = unchecked_hypotheses_json();
    return j;
}

inline nlohmann::ordered_json to_json(const ZeroComparison& c) {
    nlohmann::ordered_json j;
    j["matched"] = nlohmann::ordered_json::array();
    for (const auto& [a, b] : c.matched) j["matched"].push_back({a, b});
    j["only_in_1"] = c.only_in_1;
    j["only_in_2"] = c.only_in_2;
    j["ambiguous"] = nlohmann::ordered_json::array();
    for (const auto& [a, b] : c.ambiguous) j["ambiguous"].push_back({a, b});
    return j;
}

inline nlohmann::ordered_json to_json(const ZeroList& list) {
    nlohmann::ordered_json j;
    j["descriptor"] = list.descriptor_id;
    j["height_bound"] = list.height_bound;
    j["count"] = list.total_multiplicity();
    j["off_line_or_missed"] = list.off_line_or_missed;
    if (!list.diagnostic.empty()) j["diagnostic"] = list.diagnostic;
    j["zeros"] = nlohmann::ordered_json::array();
    for (const auto& e : list.entries)
        j["zeros"].push_back({{"ordinate", e.ordinate},
                              {"multiplicity", e.multiplicity},
                              {"residual", e.residual}});
    return j;
}

inline nlohmann::ordered_json to_json(const Corollary1Report& r) {
    nlohmann::ordered_json j;
    j["pair"] = {r.id1, r.id2};
    j["T"] = r.T;
    j["tol"] = r.tol;
    j["verdict"] = to_json(r.verdict);
    j["zero_comparison"] = to_json(r.comparison);
    j["unmatched_counts"] = {r.comparison.only_in_1.size(),
                             r.comparison.only_in_2.size()};
    j["pole_witnesses"] = nlohmann::ordered_json::array();
    for (const auto& w : r.pole_witnesses)
        j["pole_witnesses"].push_back({{"ordinate", w.ordinate},
                                       {"numerator_mag", w.numerator_mag},
                                       {"threshold", w.threshold},
                                       {"certified", w.certified}});
    return j;
}

} // namespace lseries
