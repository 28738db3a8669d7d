#pragma once

#include <array>
#include <string>
#include <vector>

#include "semistab/report.hpp"

namespace semistab {

// The fixed implication edges between the seven properties.  The single gated
// edge (pseudo-strong exponential => super-polynomial) only binds under the
// declared hypotheses Mackey-complete + barrelled + exponentially bounded.
// No further edges exist; in particular pseudo-uniform and strong exponential
// stability are incomparable.
struct HierarchyEdge {
    Property from;
    Property to;
    bool gated;
};

inline const std::array<HierarchyEdge, 7>& hierarchy_edges() {
    static const std::array<HierarchyEdge, 7> edges = {{
        {Property::UniformlyExp, Property::PseudoUniformlyExp, false},
        {Property::UniformlyExp, Property::StronglyExp, false},
        {Property::PseudoUniformlyExp, Property::PseudoStronglyExp, false},
        {Property::StronglyExp, Property::PseudoStronglyExp, false},
        {Property::PseudoStronglyExp, Property::SuperPolynomial, true},
        {Property::SuperPolynomial, Property::UniformlyStable, false},
        {Property::UniformlyStable, Property::StronglyStable, false},
    }};
    return edges;
}

inline std::string edge_label(const HierarchyEdge& e) {
    return std::string(property_name(e.from)) + " => " + property_name(e.to);
}

struct HierarchyCheck {
    bool checkable = false;  // false when some verdict is undecided
    bool consistent = false;
    std::vector<std::string> violated;
};

inline HierarchyCheck hierarchy_check(const StabilityReport& rep) {
    HierarchyCheck out;
    for (Property p : all_properties) {
        const Verdict v = rep.at(p).verdict;
        if (v != Verdict::True && v != Verdict::False) return out;  // cannot check
    }
    out.checkable = true;
    const bool gate = rep.hypotheses.mackey_complete && rep.hypotheses.barrelled &&
                      rep.hypotheses.exponentially_bounded;
    for (const auto& e : hierarchy_edges()) {
        if (e.gated && !gate) continue;
        if (rep.at(e.from).verdict == Verdict::True && rep.at(e.to).verdict == Verdict::False)
            out.violated.push_back(edge_label(e));
    }
    out.consistent = out.violated.empty();
    return out;
}

// Stamps the check into the report.
inline void apply_hierarchy_check(StabilityReport& rep) {
    const auto hc = hierarchy_check(rep);
    rep.hierarchy_consistent = hc.checkable && hc.consistent;
    rep.violated_edges = hc.violated;
}

}  // namespace semistab
