#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "semistab/hierarchy.hpp"
#include "semistab/kothe.hpp"
#include "semistab/report.hpp"

namespace semistab {

// ---------------------------------------------------------------------------
// Exponent sequences (q_j) with declared asymptotics.  The declarations drive
// the closed-form oracle; they are verified against the truncated values at
// construction, never inferred.
// ---------------------------------------------------------------------------
struct ExponentSequence {
    std::string preset;  // label, e.g. "-1/j" or "constant:-0.5"
    std::function<Complex(std::size_t)> q;
    std::size_t truncation = 200;
    bool all_re_negative = false;
    bool re_limit_zero = false;  // Re q_j -> 0 along j
    double re_sup = 0.0;         // declared sup_j Re q_j

    Complex operator()(std::size_t j) const { return q(j); }
};

inline void validate_exponents(const ExponentSequence& E) {
    for (std::size_t j = 1; j <= E.truncation; ++j) {
        const double re = E.q(j).real();
        if (re > E.re_sup + 1e-12)
            throw std::invalid_argument("exponents exceed declared re_sup at truncation");
        if (E.all_re_negative && re >= 0.0)
            throw std::invalid_argument("exponent with nonnegative real part despite declaration");
    }
}

inline ExponentSequence exponent_preset(const std::string& name, std::size_t truncation = 200) {
    ExponentSequence E;
    E.preset = name;
    E.truncation = truncation;
    if (name == "-1/j") {
        E.q = [](std::size_t j) { return Complex(-1.0 / double(j), 0.0); };
        E.all_re_negative = true;
        E.re_limit_zero = true;
        E.re_sup = 0.0;
    } else if (name == "-1/sqrt(j)") {
        E.q = [](std::size_t j) { return Complex(-1.0 / std::sqrt(double(j)), 0.0); };
        E.all_re_negative = true;
        E.re_limit_zero = true;
        E.re_sup = 0.0;
    } else if (name.rfind("constant:", 0) == 0) {
        const double v = std::stod(name.substr(9));
        E.q = [v](std::size_t) { return Complex(v, 0.0); };
        E.all_re_negative = v < 0.0;
        E.re_limit_zero = false;
        E.re_sup = v;
    } else {
        throw std::invalid_argument("unknown exponent preset: " + name);
    }
    validate_exponents(E);
    return E;
}

inline ExponentSequence exponent_from_json(const json& doc, std::size_t truncation = 200) {
    if (doc.is_string()) return exponent_preset(doc.get<std::string>(), truncation);
    if (doc.contains("preset")) {
        auto E = exponent_preset(doc.at("preset").get<std::string>(), truncation);
        return E;
    }
    if (!doc.contains("table"))
        throw std::invalid_argument("exponents: expected preset name or inline table");
    auto table = std::make_shared<std::vector<Complex>>();
    for (const auto& e : doc.at("table"))
        table->emplace_back(e.at(0).get<double>(), e.size() > 1 ? e.at(1).get<double>() : 0.0);
    if (table->empty()) throw std::invalid_argument("exponents: empty inline table");
    ExponentSequence E;
    E.preset = "inline";
    E.truncation = std::min<std::size_t>(truncation, table->size());
    // inline tables repeat their last entry beyond the listed indices
    E.q = [table](std::size_t j) { return (*table)[std::min(j, table->size()) - 1]; };
    E.all_re_negative = doc.value("all_re_negative", false);
    E.re_limit_zero = doc.value("re_limit_zero", false);
    if (!doc.contains("re_sup"))
        throw std::invalid_argument("exponents: inline table requires declared re_sup");
    E.re_sup = doc.at("re_sup").get<double>();
    validate_exponents(E);
    return E;
}

// ---------------------------------------------------------------------------
// Diagonal (multiplication) semigroups T(t)x = (e^{q_j t} x_j).
// ---------------------------------------------------------------------------
enum class SeqSpace {
    C0A,          // Koethe echelon space c0(A)
    PhiSupnorm,   // finite sequences with the sup norm
    PhiDirectsum, // finite sequences with the direct-sum topology (surrogate family)
};

inline const char* seq_space_name(SeqSpace s) {
    switch (s) {
        case SeqSpace::C0A: return "c0(A)";
        case SeqSpace::PhiSupnorm: return "phi-supnorm";
        case SeqSpace::PhiDirectsum: return "phi-directsum";
    }
    return "?";
}

struct DiagonalSemigroup {
    ExponentSequence exponents;
    SeqSpace space = SeqSpace::C0A;
    KotheMatrix matrix;  // the constant matrix stands in for the phi sup norm

    std::size_t truncation() const { return exponents.truncation; }
};

inline DiagonalSemigroup make_diagonal(const ExponentSequence& E, SeqSpace space,
                                       KotheMatrix matrix = builtin_matrix("constant")) {
    DiagonalSemigroup S;
    S.exponents = E;
    S.space = space;
    S.matrix = std::move(matrix);
    if (space == SeqSpace::C0A) S.matrix.default_truncation.index_count = E.truncation;
    return S;
}

inline SeqVector diag_apply(const DiagonalSemigroup& S, double t, const SeqVector& x) {
    if (t < 0.0) throw std::invalid_argument("diag_apply: negative time");
    SeqVector y = x;
    for (auto& [j, v] : y.entries) v *= std::exp(S.exponents(j) * t);
    return y;
}

// Seminorm used by the point-wise checks below: the Koethe level on c0(A),
// the sup norm on the phi spaces.
inline double space_seminorm(const DiagonalSemigroup& S, int k, const SeqVector& x) {
    if (S.space == SeqSpace::C0A) return seminorm_eval(S.matrix, k, x, S.truncation());
    double sup = 0.0;
    for (const auto& [j, v] : x.entries)
        if (j <= S.truncation()) sup = std::max(sup, std::abs(v));
    return sup;
}

struct ContinuityReport {
    std::vector<double> values;  // ||T(t)x - x||_k along the probe times
    bool holds = false;
};

inline ContinuityReport strong_continuity_check(const DiagonalSemigroup& S, const SeqVector& x,
                                                int k, const std::vector<double>& t_probe,
                                                double tol = 1e-6) {
    ContinuityReport rep;
    for (double t : t_probe) {
        const SeqVector diff = diag_apply(S, t, x) + x.scaled(-1.0);
        rep.values.push_back(space_seminorm(S, k, diff));
    }
    if (rep.values.empty()) return rep;
    rep.holds = rep.values.back() < tol &&
                rep.values.back() <= rep.values.front() + 1e-12;
    return rep;
}

// Exact ball operator norm sup_{||x||_m <= 1} ||T(t)x||_k for diagonal
// operators: the supremum is attained on scaled basis vectors, giving
// sup_j (a(j,k)/a(j,m)) e^{t Re q_j} with the usual 0/0 := 0 convention.
inline double ball_operator_norm(const KotheMatrix& A, int k, int m, const DiagonalSemigroup& S,
                                 double t) {
    if (t < 0.0) throw std::invalid_argument("ball_operator_norm: negative time");
    const std::size_t J = S.truncation();
    double sup = 0.0;
    for (std::size_t j = 1; j <= J; ++j) {
        const double ratio = weight_ratio(A(j, k), A(j, m));
        if (std::isinf(ratio)) return std::numeric_limits<double>::infinity();
        sup = std::max(sup, ratio * std::exp(t * S.exponents(j).real()));
    }
    return sup;
}

// ---------------------------------------------------------------------------
// Witness search for failure of condition (S) at a level k: for each pairing
// level m, look for a stagnant subsequence of weight ratios; its members give
// unit vectors x = e_j / a(j,m) whose orbits at t = 1/|Re q_j| stay above
// C/e.  Stagnation is read off by comparing tail-window maxima at truncation
// J against J/2: a genuinely vanishing ratio decays between the two windows.
// ---------------------------------------------------------------------------
struct SFailureWitness {
    int m = 0;
    double C = 0.0;            // floor of the stagnant ratios
    double lower_bound = 0.0;  // C/e
    double achieved = 0.0;     // min over the witness times of the ball norm
    std::vector<std::size_t> j_n;
    std::vector<double> t_n;
};

struct SWitnessSearch {
    int k = 0;
    bool failure_witnessed = false;  // witnesses exist for every pairing level
    std::vector<SFailureWitness> witnesses;
    std::string note;
};

namespace detail {

inline double window_max_ratio(const KotheMatrix& A, int k, int m, std::size_t J) {
    const std::size_t w_begin = J - std::max<std::size_t>(std::size_t(double(J) * 0.25), 2) + 1;
    double wmax = 0.0;
    for (std::size_t j = w_begin; j <= J; ++j) {
        const double r = weight_ratio(A(j, k), A(j, m));
        if (std::isinf(r))
            throw std::domain_error(
                "witness search: vanishing pairing weight under positive level weight");
        wmax = std::max(wmax, r);
    }
    return wmax;
}

}  // namespace detail

inline SWitnessSearch witness_search_S_failure(const KotheMatrix& A, int k, int m_max,
                                               const DiagonalSemigroup& S) {
    if (!S.exponents.re_limit_zero)
        throw std::invalid_argument("witness search requires exponents accumulating at zero");
    SWitnessSearch out;
    out.k = k;
    const std::size_t J = S.truncation();
    out.failure_witnessed = true;
    for (int m = 1; m <= m_max; ++m) {
        const double m_full = detail::window_max_ratio(A, k, m, J);
        const double m_half = detail::window_max_ratio(A, k, m, J / 2);
        const bool stagnant = m_full > 1e-12 && m_full >= 0.6 * m_half;
        if (!stagnant) {
            out.failure_witnessed = false;
            out.note = "no witness: ratios decay between truncations at pairing level " +
                       std::to_string(m);
            out.witnesses.clear();
            return out;
        }
        SFailureWitness w;
        w.m = m;
        w.C = std::numeric_limits<double>::infinity();
        for (std::size_t j = 1; j <= J; ++j) {
            const double r = weight_ratio(A(j, k), A(j, m));
            if (std::isinf(r) || r < 0.5 * m_full) continue;
            w.j_n.push_back(j);
            w.C = std::min(w.C, r);
        }
        // keep the record small: evenly thin long index lists, keep the last
        if (w.j_n.size() > 32) {
            std::vector<std::size_t> thin;
            const std::size_t stride = w.j_n.size() / 31;
            for (std::size_t i = 0; i < w.j_n.size(); i += stride) thin.push_back(w.j_n[i]);
            if (thin.back() != w.j_n.back()) thin.push_back(w.j_n.back());
            w.j_n = std::move(thin);
        }
        w.lower_bound = w.C / std::exp(1.0);
        w.achieved = std::numeric_limits<double>::infinity();
        for (std::size_t j : w.j_n) {
            const double re = S.exponents(j).real();
            const double t = 1.0 / std::fabs(re);
            w.t_n.push_back(t);
            w.achieved = std::min(w.achieved, ball_operator_norm(A, k, m, S, t));
        }
        out.witnesses.push_back(std::move(w));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Closed-form classification.  Everything here is decided from the declared
// exponent asymptotics and the space/matrix identity; it is the oracle the
// numerical classifier is measured against.
// ---------------------------------------------------------------------------
struct NoOracle : std::domain_error {
    using std::domain_error::domain_error;
};

namespace detail {

inline void oracle_set(StabilityReport& rep, Property p, bool value, const std::string& why) {
    auto& r = rep.at(p);
    r.verdict = value ? Verdict::True : Verdict::False;
    r.detail = why;
}

inline void oracle_set_all(StabilityReport& rep, const std::array<bool, 7>& v,
                           const std::array<const char*, 7>& why) {
    for (std::size_t i = 0; i < 7; ++i)
        oracle_set(rep, all_properties[i], v[i], why[i]);
}

}  // namespace detail

inline StabilityReport classify_diagonal_oracle(const DiagonalSemigroup& S,
                                                HypothesisFlags flags = {}) {
    validate_exponents(S.exponents);
    StabilityReport rep;
    rep.source = "closed-form";
    rep.truncation = S.truncation();
    rep.hypotheses = flags;

    const auto& E = S.exponents;
    using detail::oracle_set_all;

    if (!E.all_re_negative) {
        oracle_set_all(rep, {false, false, false, false, false, false, false},
                       {"a coordinate with nonnegative real exponent never decays",
                        "a coordinate with nonnegative real exponent never decays",
                        "a coordinate with nonnegative real exponent never decays",
                        "a coordinate with nonnegative real exponent never decays",
                        "a coordinate with nonnegative real exponent never decays",
                        "a coordinate with nonnegative real exponent never decays",
                        "a coordinate with nonnegative real exponent never decays"});
    } else if (!E.re_limit_zero) {
        if (!(E.re_sup < -1e-6))
            throw NoOracle(
                "no oracle: negative exponents without a declared margin or zero limit");
        const char* why = "exponents bounded away from zero: rate |re_sup|/2 works everywhere";
        oracle_set_all(rep, {true, true, true, true, true, true, true},
                       {why, why, why, why, why, why, why});
        rep.at(Property::UniformlyExp).certificate = json{{"omega", -E.re_sup / 2.0}};
    } else if (S.space == SeqSpace::PhiSupnorm) {
        oracle_set_all(
            rep, {false, false, true, true, false, false, true},
            {"exponents accumulate at zero: no global rate",
             "the sup-norm unit ball contains every basis vector, defeating any fixed rate",
             "finite support: rate below min |Re q_j| over the support works",
             "follows from the per-point rate",
             "the unit ball contains basis vectors with arbitrarily slow decay",
             "the unit ball contains basis vectors: orbit supremum stays near one",
             "finitely supported points decay exponentially"});
    } else if (S.space == SeqSpace::PhiDirectsum) {
        oracle_set_all(
            rep, {false, false, true, true, true, true, true},
            {"exponents accumulate at zero: no global rate",
             "the summing seminorm sees every coordinate, defeating any fixed rate",
             "finite support: rate below min |Re q_j| over the support works",
             "follows from the per-point rate",
             "bounded sets have common finite support, so every polynomial scaling converges",
             "bounded sets have common finite support",
             "finitely supported points decay exponentially"});
    } else {
        const std::string& name = S.matrix.name;
        if (name == "cn") {
            oracle_set_all(
                rep, {false, true, false, true, true, true, true},
                {"exponents accumulate at zero: no global rate",
                 "level k sees only coordinates j <= k: rate |max_{j<=k} Re q_j|/2",
                 "full-support points require the rate to undercut every |Re q_j|",
                 "fixed level and point involve finitely many coordinates",
                 "the per-level rate beats every polynomial",
                 "per-level exponential decay dominates bounded sets",
                 "per-level exponential decay dominates points"});
        } else if (name == "s") {
            oracle_set_all(
                rep, {false, false, false, false, true, true, true},
                {"exponents accumulate at zero: no global rate",
                 "slow coordinates defeat any per-level rate",
                 "full-support points admit no exponential rate",
                 "full-support points admit no exponential rate at any level",
                 "pairing level m = k + 3 absorbs polynomial scalings",
                 "weight-ratio decay (Schwartz property) gives unscaled ball convergence",
                 "unscaled ball convergence restricts to points"});
        } else if (name == "constant") {
            oracle_set_all(
                rep, {false, false, false, false, false, false, true},
                {"exponents accumulate at zero: no global rate",
                 "a single norm with slow coordinates: no per-level rate",
                 "full-support points admit no exponential rate",
                 "full-support points admit no exponential rate at any level",
                 "stagnant unit ratios: scaled ball norms stay above C/e",
                 "the unit ball contains basis vectors: orbit supremum stays near one",
                 "each point decays coordinatewise with a uniform bound"});
        } else if (name == "m-not-s") {
            oracle_set_all(
                rep, {false, false, false, false, false, true, true},
                {"exponents accumulate at zero: no global rate",
                 "stagnant weight ratios defeat any per-level rate",
                 "full-support points admit no exponential rate",
                 "full-support points admit no exponential rate at any level",
                 "ball pairing obstructed: stagnant ratios give C/e lower bounds",
                 "vanishing infima of weight ratios (Montel-type argument)",
                 "unscaled ball convergence restricts to points"});
        } else {
            throw NoOracle("no oracle: matrix " + name + " has no closed-form table");
        }
    }
    apply_hierarchy_check(rep);
    return rep;
}

}  // namespace semistab
