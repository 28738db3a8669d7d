#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "semistab/scenario.hpp"

namespace semistab {

// Schema violations carry the offending field path in the message.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Ad-hoc scenario configuration: a single JSON document.
//
//   {"kind": "diagonal",
//    "exponents": "-1/j" | {"preset": ...} | {"table": [[re,im],...], "re_sup": ...},
//    "space": "c0(A)" | "phi-supnorm" | "phi-directsum",       (default c0(A))
//    "matrix": "s" | "cn" | "constant" | "m-not-s" | [[...]],  (c0(A) only)
//    "levels": [1, 2, 3],                                      (c0(A) only)
//    "levels_unbounded": bool,                                 (default false)
//    "probes": ["e1", "mix", "ones", "dense-decay"],
//    "sets": ["ones-ball", "env-exp-ball",
//             "basis-family:bounded", "basis-family:unbounded"],
//    "ball_pairing": bool,                                     (c0(A) only)
//    "flags": {"barrelled": b, "mackey_complete": b, "baire": b,
//              "montel": b, "exponentially_bounded": b},       (default false)
//    "truncation": J, "t_max": T}
//
//   {"kind": "heat-fourier",
//    "q": re | [re, im],          (only the real part moves seminorm values)
//    "seminorms": {"schwartz": [0,1,3], "sobolev": [0,1]},
//    "flags": {...}, "t_max": T}
// ---------------------------------------------------------------------------

struct LoadedConfig {
    ScenarioKind kind = ScenarioKind::Diagonal;
    DiagScenarioDef diag;
    FunScenarioDef fun;
    TruncationProfile profile;
};

namespace config_detail {

inline HypothesisFlags parse_flags(const json& doc) {
    HypothesisFlags f;
    if (!doc.contains("flags")) return f;
    const json& fl = doc.at("flags");
    if (!fl.is_object()) throw ConfigError("flags: expected object");
    for (const auto& [key, val] : fl.items()) {
        if (!val.is_boolean()) throw ConfigError("flags." + key + ": expected boolean");
        const bool b = val.get<bool>();
        if (key == "barrelled")
            f.barrelled = b;
        else if (key == "mackey_complete")
            f.mackey_complete = b;
        else if (key == "baire")
            f.baire = b;
        else if (key == "montel")
            f.montel = b;
        else if (key == "exponentially_bounded")
            f.exponentially_bounded = b;
        else
            throw ConfigError("flags." + key + ": unknown flag");
    }
    return f;
}

inline DiagTarget parse_probe(const std::string& p, std::size_t i) {
    if (p == "e1") return diag_probe_basis(1);
    if (p == "mix") return diag_probe_mix();
    if (p == "ones") return diag_probe_ones();
    if (p == "dense-decay") return diag_probe_dense_decay();
    throw ConfigError("probes[" + std::to_string(i) + "]: unknown probe \"" + p + "\"");
}

inline DiagTarget parse_set(const std::string& s, std::size_t i) {
    if (s == "ones-ball") return diag_set_envelope("ones-ball", [](std::size_t) { return 1.0; });
    if (s == "env-exp-ball")
        return diag_set_envelope("env-ball", [](std::size_t j) { return std::exp(-double(j)); });
    if (s == "basis-family:bounded") return diag_set_basis_family(true);
    if (s == "basis-family:unbounded") return diag_set_basis_family(false);
    throw ConfigError("sets[" + std::to_string(i) + "]: unknown set \"" + s + "\"");
}

inline LoadedConfig load_diagonal(const json& doc) {
    LoadedConfig out;
    out.kind = ScenarioKind::Diagonal;
    DiagScenarioDef& d = out.diag;
    d.name = doc.value("name", std::string("config-diagonal"));

    const std::size_t truncation = doc.value("truncation", std::size_t(200));
    out.profile.index_count = truncation;

    if (!doc.contains("exponents")) throw ConfigError("exponents: missing field");
    ExponentSequence E;
    try {
        E = exponent_from_json(doc.at("exponents"), truncation);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("exponents: ") + e.what());
    }

    const std::string space = doc.value("space", std::string("c0(A)"));
    if (space == "c0(A)" || space == "c0") {
        KotheMatrix A;
        try {
            A = matrix_from_json(doc);
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
        d.semigroup = make_diagonal(E, SeqSpace::C0A, std::move(A));
        if (!doc.contains("levels")) throw ConfigError("levels: required for c0(A)");
        const auto lv = doc.at("levels").get<std::vector<int>>();
        if (lv.empty()) throw ConfigError("levels: empty seminorm family");
        d.sems = kothe_seminorms(d.semigroup.matrix, lv);
        d.kothe_levels = lv;
        d.ball_pairing = doc.value("ball_pairing", false);
    } else if (space == "phi-supnorm" || space == "phi-directsum") {
        for (const char* field : {"matrix", "levels"})
            if (doc.contains(field))
                throw ConfigError(std::string(field) + ": incompatible with " + space);
        if (doc.value("ball_pairing", false))
            throw ConfigError("ball_pairing: incompatible with " + space);
        if (space == "phi-supnorm") {
            d.semigroup = make_diagonal(E, SeqSpace::PhiSupnorm);
            d.sems = {supnorm_seminorm()};
        } else {
            d.semigroup = make_diagonal(E, SeqSpace::PhiDirectsum);
            d.sems = directsum_seminorms();
        }
    } else {
        throw ConfigError("space: unknown space \"" + space + "\"");
    }

    d.levels_unbounded = doc.value("levels_unbounded", false);

    if (!doc.contains("probes")) throw ConfigError("probes: missing field");
    const json& probes = doc.at("probes");
    if (!probes.is_array() || probes.empty())
        throw ConfigError("probes: at least one probe required");
    for (std::size_t i = 0; i < probes.size(); ++i)
        d.targets.push_back(parse_probe(probes.at(i).get<std::string>(), i));
    if (doc.contains("sets")) {
        const json& sets = doc.at("sets");
        if (!sets.is_array()) throw ConfigError("sets: expected array");
        for (std::size_t i = 0; i < sets.size(); ++i)
            d.targets.push_back(parse_set(sets.at(i).get<std::string>(), i));
    }

    d.flags = parse_flags(doc);
    return out;
}

inline LoadedConfig load_heat(const json& doc) {
    LoadedConfig out;
    out.kind = ScenarioKind::Function;

    if (!doc.contains("q")) throw ConfigError("q: missing field");
    double qr = 0.0;
    const json& q = doc.at("q");
    if (q.is_number())
        qr = q.get<double>();
    else if (q.is_array() && !q.empty())
        qr = q.at(0).get<double>();
    else
        throw ConfigError("q: expected number or [re, im]");
    if (qr > 0.0) throw ConfigError("q: positive real part is not a stability scenario");

    if (!doc.contains("seminorms")) throw ConfigError("seminorms: missing field");
    const json& sn = doc.at("seminorms");
    if (!sn.is_object()) throw ConfigError("seminorms: expected object");
    std::vector<SeminormTag> sems;
    for (const auto& [key, val] : sn.items()) {
        if (key == "schwartz")
            for (const auto& N : val) sems.push_back(SeminormTag::schwartz(N.get<int>()));
        else if (key == "sobolev")
            for (const auto& n : val) sems.push_back(SeminormTag::sobolev_fourier(n.get<int>()));
        else
            throw ConfigError("seminorms." + key + ": unknown family");
    }
    if (sems.empty()) throw ConfigError("seminorms: empty seminorm family");

    out.fun = scenario_detail::heat_fourier_def(doc.value("name", std::string("config-heat")),
                                                qr, std::move(sems));
    out.fun.flags = parse_flags(doc);
    return out;
}

}  // namespace config_detail

inline LoadedConfig load_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
    if (!doc.contains("kind")) throw ConfigError("kind: missing field");
    const std::string kind = doc.at("kind").get<std::string>();
    LoadedConfig out;
    if (kind == "diagonal")
        out = config_detail::load_diagonal(doc);
    else if (kind == "heat-fourier")
        out = config_detail::load_heat(doc);
    else
        throw ConfigError("kind: expected \"diagonal\" or \"heat-fourier\"");
    if (doc.contains("t_max")) {
        const double tm = doc.at("t_max").get<double>();
        if (tm <= out.profile.times.t_min) throw ConfigError("t_max: must exceed the grid start");
        out.profile.times.t_max = tm;
    }
    return out;
}

inline LoadedConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    return load_config(doc);
}

inline ScenarioRun run_config(const LoadedConfig& cfg) {
    ScenarioRun out;
    out.times = cfg.profile.times.samples();
    if (cfg.kind == ScenarioKind::Diagonal) {
        DiagCertifier c(cfg.diag, cfg.profile);
        out.report = c.run();
        out.trajectories = c.trajectory_table();
    } else {
        FunCertifier c(cfg.fun, cfg.profile);
        out.report = c.run();
        out.trajectories = c.trajectory_table();
    }
    return out;
}

}  // namespace semistab
