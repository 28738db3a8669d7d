#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace semistab {

using json = nlohmann::ordered_json;

// The seven stability properties, ordered from the strongest global notion to
// plain strong stability.  The "pseudo" variants move the rate quantifier
// inside the seminorm (and point) quantifiers.
enum class Property : int {
    UniformlyExp = 0,       // one rate for all bounded sets and seminorms
    PseudoUniformlyExp,     // rate may depend on the seminorm
    StronglyExp,            // rate may depend on the point
    PseudoStronglyExp,      // rate may depend on seminorm and point
    SuperPolynomial,        // every polynomial scaling still converges on bounded sets
    UniformlyStable,        // unscaled convergence on bounded sets
    StronglyStable,         // unscaled convergence pointwise
};

inline constexpr std::array<Property, 7> all_properties = {
    Property::UniformlyExp,    Property::PseudoUniformlyExp, Property::StronglyExp,
    Property::PseudoStronglyExp, Property::SuperPolynomial,  Property::UniformlyStable,
    Property::StronglyStable,
};

inline const char* property_name(Property p) {
    switch (p) {
        case Property::UniformlyExp: return "uniformly-exp";
        case Property::PseudoUniformlyExp: return "pseudo-uniformly-exp";
        case Property::StronglyExp: return "strongly-exp";
        case Property::PseudoStronglyExp: return "pseudo-strongly-exp";
        case Property::SuperPolynomial: return "super-polynomial";
        case Property::UniformlyStable: return "uniformly-stable";
        case Property::StronglyStable: return "strongly-stable";
    }
    return "?";
}

inline Property property_from_name(const std::string& name) {
    for (Property p : all_properties)
        if (name == property_name(p)) return p;
    throw std::invalid_argument("unknown property name: " + name);
}

enum class Verdict { True, False, Inconclusive, NotEvaluated };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::True: return "true";
        case Verdict::False: return "false";
        case Verdict::Inconclusive: return "inconclusive";
        case Verdict::NotEvaluated: return "not-evaluated";
    }
    return "?";
}

struct PropertyResult {
    Verdict verdict = Verdict::NotEvaluated;
    std::string detail;             // what decided it, incl. the family used
    json certificate;               // passing parameter assignment, if any
    json witness;                   // innermost failing combination, if any
    bool truncation_sensitive = false;
};

// Scenario metadata: never inferred, only declared.
struct HypothesisFlags {
    bool barrelled = false;
    bool mackey_complete = false;
    bool baire = false;
    bool montel = false;
    bool exponentially_bounded = false;

    json to_json() const {
        return json{{"barrelled", barrelled},
                    {"mackey_complete", mackey_complete},
                    {"baire", baire},
                    {"montel", montel},
                    {"exponentially_bounded", exponentially_bounded}};
    }
};

struct StabilityReport {
    int report_version = 1;
    std::string scenario;
    std::string source;  // "certify" or "closed-form"
    std::size_t truncation = 0;
    double t_max = 0.0;
    HypothesisFlags hypotheses;
    std::array<PropertyResult, 7> properties;
    bool hierarchy_consistent = true;
    std::vector<std::string> violated_edges;
    json extras = json::object();  // integral criteria, transport rates, ...

    PropertyResult& at(Property p) { return properties[static_cast<std::size_t>(p)]; }
    const PropertyResult& at(Property p) const {
        return properties[static_cast<std::size_t>(p)];
    }

    std::array<Verdict, 7> verdict_vector() const {
        std::array<Verdict, 7> v{};
        for (std::size_t i = 0; i < 7; ++i) v[i] = properties[i].verdict;
        return v;
    }

    bool any_truncation_sensitive() const {
        for (const auto& pr : properties)
            if (pr.truncation_sensitive) return true;
        return false;
    }

    json to_json() const {
        json doc;
        doc["report_version"] = report_version;
        doc["scenario"] = scenario;
        doc["source"] = source;
        doc["truncation"] = json{{"index_count", truncation}, {"t_max", t_max}};
        doc["hypotheses"] = hypotheses.to_json();
        json verdicts = json::object();
        json certificates = json::object();
        json witnesses = json::array();
        json details = json::object();
        for (Property p : all_properties) {
            const auto& pr = at(p);
            verdicts[property_name(p)] = verdict_name(pr.verdict);
            details[property_name(p)] = pr.detail;
            if (!pr.certificate.is_null()) certificates[property_name(p)] = pr.certificate;
            if (!pr.witness.is_null())
                witnesses.push_back(json{{"property", property_name(p)}, {"record", pr.witness}});
            if (pr.truncation_sensitive)
                details[property_name(p)] = pr.detail + " [truncation-sensitive]";
        }
        doc["verdicts"] = verdicts;
        doc["certificates"] = certificates;
        doc["witnesses"] = witnesses;
        doc["details"] = details;
        doc["hierarchy"] =
            json{{"consistent", hierarchy_consistent}, {"violated_edges", violated_edges}};
        if (!extras.empty()) doc["extras"] = extras;
        return doc;
    }
};

}  // namespace semistab
