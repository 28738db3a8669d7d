#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "semistab/certify.hpp"

namespace semistab {

// ---------------------------------------------------------------------------
// Reusable scenario building blocks.
// ---------------------------------------------------------------------------

// constant 1 on the whole line (not compactly supported on purpose)
inline GridFunction const_one() {
    GridFunction g;
    g.tag = "one";
    g.value_fn = [](double) { return 1.0; };
    g.deriv_fn = [](int, double) { return 0.0; };
    g.analytic_derivs = true;
    return g;
}

// piecewise-linear bump rising to 1 at mid
inline GridFunction tent(double lo, double mid, double hi) {
    return pw_linear({lo, mid, hi}, {0.0, 1.0, 0.0});
}

// 0, 1, 1/2, 1/4, 3/4, 1/8, 3/8, ...  Nested under prefix extension, so a
// family enumerated through this sequence is a superset of its shorter
// prefixes — member-count doubling never swaps members out.
inline double dyadic_frac(std::size_t i) {
    if (i == 0) return 0.0;
    if (i == 1) return 1.0;
    if (i == 2) return 0.5;
    std::size_t base = 3, m = 2;
    while (i >= base + (std::size_t(1) << (m - 1))) {
        base += std::size_t(1) << (m - 1);
        ++m;
    }
    const std::size_t b = i - base;
    return double(2 * b + 1) / double(std::size_t(1) << m);
}

inline GridFunction translated_gaussian(double c) {
    GridFunction g;
    g.tag = "gauss@" + std::to_string(c);
    g.value_fn = [c](double x) {
        const double u = x - c;
        return std::exp(-u * u);
    };
    g.deriv_fn = [c](int n, double x) {
        const double u = x - c;
        const double e = std::exp(-u * u);
        switch (n) {
            case 1: return -2.0 * u * e;
            case 2: return (4.0 * u * u - 2.0) * e;
            case 3: return (-8.0 * u * u * u + 12.0 * u) * e;
            default: throw std::invalid_argument("order out of range");
        }
    };
    g.analytic_derivs = true;
    return g;
}

// ---------------------------------------------------------------------------
// Registry: every scenario carries its space/semigroup construction, its
// hypothesis flags (metadata, never inferred), and the verdict row it is
// expected to reproduce at default truncation.
// ---------------------------------------------------------------------------

enum class ScenarioKind { Diagonal, Function };

struct ScenarioEntry {
    std::string name;
    std::string setting;   // one-line description of the space and semigroup
    std::string expected;  // seven 'T'/'F' characters in hierarchy order
    ScenarioKind kind = ScenarioKind::Diagonal;
    std::function<DiagScenarioDef()> diagonal;  // set iff kind == Diagonal
    std::function<FunScenarioDef()> function;   // set iff kind == Function
};

namespace scenario_detail {

// --- right shift on [0,inf) under pointwise evaluations --------------------
inline FunScenarioDef shift_ptw_halfline_zero() {
    FunScenarioDef d;
    d.name = "shift-ptw-halfline-zero";
    for (double s : {0.5, 1.0, 2.5, 7.0}) d.sems.push_back(SeminormTag::point_eval(s));
    GridFunction p1 = tent(0.0, 0.5, 1.0);
    p1.domain_lo = 0.0;
    GridFunction p2 = tent(1.0, 2.0, 3.0);
    p2.domain_lo = 0.0;
    d.targets.push_back(fun_probe("tent-01", [p1](double t) { return shift_apply(t, p1); }));
    d.targets.push_back(fun_probe("tent-13", [p2](double t) { return shift_apply(t, p2); }));
    d.targets.push_back(fun_set_family(
        "hat-family",
        [](std::size_t count) {
            std::vector<FunMember> ms;
            for (std::size_t n = 2; n < 2 + count; ++n) {
                GridFunction h = hat_function(int(n));
                h.domain_lo = 0.0;
                ms.push_back(
                    {"hat-" + std::to_string(n), [h](double t) { return shift_apply(t, h); }});
            }
            return ms;
        },
        32, 1.0));
    d.flags.exponentially_bounded = false;
    // every single trajectory dies in finite time, yet the orbit of the hat
    // family blows up through the moving peak: [T(1/n) f_n](1) = n
    json samples = json::array();
    for (int n : {2, 4, 8, 16, 32}) {
        GridFunction h = hat_function(n);
        h.domain_lo = 0.0;
        const GridFunction moved = shift_apply(1.0 / n, h);
        samples.push_back({{"n", n}, {"t", 1.0 / double(n)}, {"value_at_1", moved(1.0)}});
    }
    d.extras_seed["orbit_escape"] = {
        {"note",
         "hat family: each trajectory vanishes in finite time, but the shifted peak "
         "passes through x = 1 with height n, so no neighborhood absorbs the orbit"},
        {"samples", samples}};
    return d;
}

// --- right shift on the whole line, compact-open topology ------------------
inline FunScenarioDef shift_co_line() {
    FunScenarioDef d;
    d.name = "shift-co-line";
    for (double n : {1.0, 2.0, 5.0, 8.0}) d.sems.push_back(SeminormTag::compact_sup(n));
    const GridFunction g0 = gaussian();
    const GridFunction one = const_one();
    d.targets.push_back(fun_probe("gauss", [g0](double t) { return shift_apply(t, g0); }));
    d.targets.push_back(fun_probe("const-1", [one](double t) { return shift_apply(t, one); }));
    d.targets.push_back(
        fun_set_fixed("ball-of-1", {{"const-1", [one](double t) { return shift_apply(t, one); }},
                                    {"gauss", [g0](double t) { return shift_apply(t, g0); }}}));
    d.flags.barrelled = d.flags.mackey_complete = d.flags.baire = true;
    d.flags.exponentially_bounded = false;
    return d;
}

// --- right shift of compactly supported functions, compact-open ------------
inline FunScenarioDef shift_cc_co_line() {
    FunScenarioDef d;
    d.name = "shift-cc-co-line";
    for (double n : {1.0, 2.0, 5.0, 8.0}) d.sems.push_back(SeminormTag::compact_sup(n));
    const GridFunction p = tent(-2.0, -1.0, 0.0);
    d.targets.push_back(fun_probe("tent", [p](double t) { return shift_apply(t, p); }));
    d.targets.push_back(fun_set_family(
        "bump-train",
        [](std::size_t count) {
            std::vector<FunMember> ms;
            for (std::size_t j = 1; j <= count; ++j) {
                const GridFunction b = tent(-double(j) - 1.0, -double(j), -double(j) + 1.0);
                ms.push_back(
                    {"bump-" + std::to_string(j), [b](double t) { return shift_apply(t, b); }});
            }
            return ms;
        },
        64));
    d.flags.exponentially_bounded = false;
    return d;
}

// --- left shift absorbed at the half-line edge, weighted sups --------------
inline FunScenarioDef shift_cc_ind_halfline() {
    FunScenarioDef d;
    d.name = "shift-cc-ind-halfline";
    for (const char* w : {"1", "1+x^2", "e^|x|"}) d.sems.push_back(SeminormTag::weighted_sup(w));
    const ScalarField zero_field = field_constant(0.0);
    GridFunction p = tent(1.0, 2.0, 3.0);
    p.domain_lo = 0.0;
    d.targets.push_back(fun_probe(
        "tent-13", [p, zero_field](double t) { return transport_apply(zero_field, t, p); }));
    d.targets.push_back(fun_set_family(
        "tent-family",
        [zero_field](std::size_t count) {
            std::vector<FunMember> ms;
            for (std::size_t i = 0; i < count; ++i) {
                const double c = 1.0 + 3.0 * dyadic_frac(i);
                GridFunction b = tent(c - 0.5, c, c + 0.5);
                b.domain_lo = 0.0;
                ms.push_back({"tent@" + std::to_string(c), [b, zero_field](double t) {
                                  return transport_apply(zero_field, t, b);
                              }});
            }
            return ms;
        },
        6, 5.0));
    d.flags.barrelled = d.flags.mackey_complete = true;
    d.flags.exponentially_bounded = true;
    return d;
}

// --- diagonal multiplication on finite sequences, sup norm -----------------
inline DiagScenarioDef mult_phi_supnorm() {
    DiagScenarioDef d;
    d.name = "mult-phi-supnorm";
    d.semigroup = make_diagonal(exponent_preset("-1/j"), SeqSpace::PhiSupnorm);
    d.sems = {supnorm_seminorm()};
    d.targets.push_back(diag_probe_basis(1));
    d.targets.push_back(diag_probe_mix());
    d.targets.push_back(diag_set_basis_family(true));
    d.flags.exponentially_bounded = false;
    return d;
}

// --- diagonal multiplication on finite sequences, direct-sum levels --------
inline DiagScenarioDef mult_phi_directsum() {
    DiagScenarioDef d;
    d.name = "mult-phi-directsum";
    d.semigroup = make_diagonal(exponent_preset("-1/j"), SeqSpace::PhiDirectsum);
    d.sems = directsum_seminorms();
    d.targets.push_back(diag_probe_basis(1));
    d.targets.push_back(diag_probe_mix());
    d.targets.push_back(diag_set_basis_family(false));
    d.flags.montel = true;
    d.flags.exponentially_bounded = true;
    return d;
}

// --- diagonal multiplication on c0 (constant matrix) -----------------------
inline DiagScenarioDef mult_c0_strong() {
    DiagScenarioDef d;
    d.name = "mult-c0-strong";
    d.semigroup = make_diagonal(exponent_preset("-1/j"), SeqSpace::C0A, builtin_matrix("constant"));
    std::vector<int> lv = {1, 2, 3};
    d.sems = kothe_seminorms(d.semigroup.matrix, lv);
    d.kothe_levels = lv;
    d.levels_unbounded = false;
    d.targets.push_back(diag_probe_basis(1));
    d.targets.push_back(diag_probe_dense_decay());
    d.targets.push_back(diag_probe_ones());
    d.targets.push_back(diag_set_envelope("ones-ball", [](std::size_t) { return 1.0; }));
    d.targets.push_back(diag_set_basis_family(true));
    d.flags.barrelled = d.flags.mackey_complete = d.flags.baire = true;
    d.flags.exponentially_bounded = true;
    d.ball_pairing = true;
    return d;
}

// --- diagonal multiplication under pointwise-convergence levels ------------
inline DiagScenarioDef mult_cn_pointwise() {
    DiagScenarioDef d;
    d.name = "mult-cn-pointwise";
    d.semigroup = make_diagonal(exponent_preset("-1/j"), SeqSpace::C0A, builtin_matrix("cn"));
    std::vector<int> lv = {1, 2, 3, 4, 5};
    d.sems = kothe_seminorms(d.semigroup.matrix, lv);
    d.kothe_levels = lv;
    d.levels_unbounded = true;
    d.targets.push_back(diag_probe_basis(1));
    d.targets.push_back(diag_probe_mix());
    d.targets.push_back(diag_probe_ones());
    d.targets.push_back(diag_set_envelope("ones-ball", [](std::size_t) { return 1.0; }));
    d.targets.push_back(diag_set_basis_family(true));
    d.flags.barrelled = d.flags.mackey_complete = d.flags.baire = d.flags.montel = true;
    d.flags.exponentially_bounded = true;
    d.ball_pairing = true;
    return d;
}

// --- diagonal multiplication on rapidly decreasing sequences ---------------
inline DiagScenarioDef mult_5_s_space() {
    DiagScenarioDef d;
    d.name = "mult-5-s-space";
    d.semigroup = make_diagonal(exponent_preset("-1/j"), SeqSpace::C0A, builtin_matrix("s"));
    std::vector<int> lv = {0, 1, 2, 3, 5};
    d.sems = kothe_seminorms(d.semigroup.matrix, lv);
    d.kothe_levels = lv;
    d.levels_unbounded = true;
    d.targets.push_back(diag_probe_basis(1));
    d.targets.push_back(diag_probe_mix());
    d.targets.push_back(diag_probe_dense_decay());
    d.targets.push_back(
        diag_set_envelope("env-ball", [](std::size_t j) { return std::exp(-double(j)); }));
    d.targets.push_back(diag_set_basis_family(false));
    d.flags.barrelled = d.flags.mackey_complete = d.flags.baire = d.flags.montel = true;
    d.flags.exponentially_bounded = true;
    d.ball_pairing = true;
    return d;
}

// --- s matrix with slowly vanishing exponents ------------------------------
inline DiagScenarioDef mult_s_sqrt_ball() {
    DiagScenarioDef d = mult_5_s_space();
    d.name = "mult-s-sqrt-ball";
    d.semigroup = make_diagonal(exponent_preset("-1/sqrt(j)"), SeqSpace::C0A, builtin_matrix("s"));
    return d;
}

// --- staircase matrix satisfying (M) but not (S), sqrt exponents -----------
inline DiagScenarioDef mult_M_montel_sqrt() {
    DiagScenarioDef d;
    d.name = "mult-M-montel-sqrt";
    d.semigroup =
        make_diagonal(exponent_preset("-1/sqrt(j)"), SeqSpace::C0A, builtin_matrix("m-not-s"));
    std::vector<int> lv = {1, 2, 3, 5};
    d.sems = kothe_seminorms(d.semigroup.matrix, lv);
    d.kothe_levels = lv;
    d.levels_unbounded = true;
    d.targets.push_back(diag_probe_basis(1));
    d.targets.push_back(diag_probe_mix());
    d.targets.push_back(diag_probe_dense_decay());
    const auto A = d.semigroup.matrix;
    // weighted so the set is bounded in every level, not only below level 5
    d.targets.push_back(diag_set_envelope("level5-ball", [A](std::size_t j) {
        const double w = A(j, 5) * std::pow(1.0 + double(j), 3.0);
        return w > 0.0 ? 1.0 / w : 0.0;
    }));
    d.targets.push_back(diag_set_basis_family(false));
    d.flags.barrelled = d.flags.mackey_complete = d.flags.baire = d.flags.montel = true;
    d.flags.exponentially_bounded = true;
    d.ball_pairing = true;
    return d;
}

// --- staircase matrix with -1/j exponents -----------------------------------
inline DiagScenarioDef mult_8_m_not_s() {
    DiagScenarioDef d = mult_M_montel_sqrt();
    d.name = "mult-8-m-not-s";
    d.semigroup =
        make_diagonal(exponent_preset("-1/j"), SeqSpace::C0A, builtin_matrix("m-not-s"));
    return d;
}

// --- transport scenarios -----------------------------------------------------
inline FunScenarioDef transport_def(std::string name, const ScalarField& F) {
    FunScenarioDef d;
    d.name = std::move(name);
    for (double n : {1.0, 2.0, 5.0}) d.sems.push_back(SeminormTag::compact_sup(n));
    const GridFunction g0 = gaussian();
    const GridFunction one = const_one();
    d.targets.push_back(fun_probe("gauss", [g0, F](double t) { return transport_apply(F, t, g0); }));
    d.targets.push_back(
        fun_probe("const-1", [one, F](double t) { return transport_apply(F, t, one); }));
    d.targets.push_back(fun_set_fixed(
        "ball-of-1", {{"const-1", [one, F](double t) { return transport_apply(F, t, one); }}}));
    d.flags.barrelled = d.flags.mackey_complete = d.flags.baire = true;
    d.flags.exponentially_bounded = true;
    // window-integral diagnostics for the coefficient field
    json samples = json::array();
    for (double t : {1.0, 5.0, 10.0, 25.0, 50.0}) {
        const MuResult r = mu_q(F, t);
        samples.push_back(
            {{"t", t}, {"mu", r.value}, {"sup_not_localized", r.sup_not_localized}});
    }
    const MuRate mr = mu_rate(F);
    d.extras_seed["mu_window"] = {{"field", F.name},
                                  {"samples", samples},
                                  {"decay_rate", mr.rate},
                                  {"sup_not_localized", mr.sup_not_localized}};
    return d;
}

inline FunScenarioDef transport_decaying_q() {
    return transport_def("transport-decaying-q", field_neg_inv_one_plus_x2());
}

inline FunScenarioDef transport_sin_minus_1() {
    return transport_def("transport-sin-minus-1", field_sin_minus_1());
}

// --- heat flow on the Fourier side ------------------------------------------
inline FunScenarioDef heat_fourier_def(std::string name, double qr,
                                       std::vector<SeminormTag> sems) {
    FunScenarioDef d;
    d.name = std::move(name);
    d.sems = std::move(sems);
    // Fourier-side evolution of a polynomial-times-gaussian profile is exact:
    // the heat factor widens the gaussian and the potential rescales it
    auto gauss_mem = [qr](std::string name, std::vector<double> coeffs, double a) {
        FunMember m;
        m.name = std::move(name);
        m.at = [coeffs, a, qr](double t) {
            std::vector<double> c = coeffs;
            const double s = std::exp(qr * t);
            for (double& x : c) x *= s;
            return gauss_poly(c, a + t);
        };
        return m;
    };
    {
        FunTarget p;
        p.name = "gauss";
        p.fixed = {gauss_mem("gauss", {1.0}, 1.0)};
        p.member_count = 1;
        d.targets.push_back(p);
    }
    {
        FunTarget p;
        p.name = "x2-gauss";
        p.fixed = {gauss_mem("x2-gauss", {0.0, 0.0, 1.0}, 1.0)};
        p.member_count = 1;
        d.targets.push_back(p);
    }
    d.targets.push_back(fun_set_family(
        "dilate-family",
        [gauss_mem](std::size_t count) {
            std::vector<FunMember> ms;
            for (std::size_t i = 0; i < count; ++i) {
                const double a = 0.5 + 1.5 * dyadic_frac(i);
                ms.push_back(gauss_mem("gauss-a" + std::to_string(a), {1.0}, a));
            }
            return ms;
        },
        6));
    d.targets.push_back(fun_set_fixed("poly-ball", {gauss_mem("x-gauss", {0.0, 1.0}, 1.0),
                                                    gauss_mem("x2-gauss", {0.0, 0.0, 1.0}, 1.0),
                                                    gauss_mem("gauss", {1.0}, 1.0)}));
    return d;
}

inline FunScenarioDef heat_schwartz_qneg() {
    std::vector<SeminormTag> sems;
    for (int N : {0, 1, 3}) sems.push_back(SeminormTag::schwartz(N));
    FunScenarioDef d = heat_fourier_def("heat-schwartz-qneg", -1.0, std::move(sems));
    d.flags.barrelled = d.flags.mackey_complete = d.flags.baire = d.flags.montel = true;
    d.flags.exponentially_bounded = true;
    return d;
}

// --- heat flow with zero potential, Sobolev levels --------------------------
inline FunScenarioDef heat_H_q0() {
    FunScenarioDef d;
    d.name = "heat-H-q0";
    for (int n : {0, 1}) d.sems.push_back(SeminormTag::sobolev_fourier(n));
    {
        FunTarget p;
        p.name = "gauss";
        p.fixed = {{"gauss", [](double t) { return gaussian(1.0 + t); }}};
        p.member_count = 1;
        d.targets.push_back(p);
    }
    // spike of mass 1 on [0, 1/k]: the heat factor barely dents it, so the
    // family's H^0 norms stay bounded away from zero
    d.targets.push_back(fun_set_family(
        "indicator-family",
        [](std::size_t count) {
            std::vector<FunMember> ms;
            for (std::size_t i = 1; i <= count; ++i) {
                const double k = std::pow(2.0, double(i));
                FunMember m;
                m.name = "ind-k" + std::to_string(std::size_t(k));
                m.at = [k](double t) {
                    GridFunction g;
                    g.tag = "ind";
                    g.compact_support = true;
                    g.support_lo = 0.0;
                    g.support_hi = 1.0 / k;
                    g.max_deriv_order = 0;
                    g.value_fn = [k, t](double x) { return std::sqrt(k) * std::exp(-x * x * t); };
                    return g;
                };
                ms.push_back(m);
            }
            return ms;
        },
        8));
    d.flags.barrelled = d.flags.mackey_complete = d.flags.baire = true;
    d.flags.exponentially_bounded = true;
    return d;
}

// --- multiplication by a smooth matching of -1/|x| on Schwartz space --------
inline FunScenarioDef mult_schwartz_interpolant() {
    FunScenarioDef d;
    d.name = "mult-schwartz-interpolant";
    for (int N : {0, 1, 3}) d.sems.push_back(SeminormTag::schwartz(N));
    const ScalarField F = field_interp_neg_inv_abs();
    const GridFunction g0 = gaussian();
    const GridFunction es = exp_sqrt_profile();
    d.targets.push_back(fun_probe("gauss", [g0, F](double t) { return mult_apply(F, t, g0); }));
    d.targets.push_back(fun_probe("exp-sqrt", [es, F](double t) { return mult_apply(F, t, es); }));
    d.targets.push_back(fun_set_family(
        "translate-family",
        [F](std::size_t count) {
            std::vector<FunMember> ms;
            for (std::size_t i = 0; i < count; ++i) {
                const double c = -3.0 + 6.0 * dyadic_frac(i);
                const GridFunction g = translated_gaussian(c);
                ms.push_back(
                    {"gauss@" + std::to_string(c), [g, F](double t) { return mult_apply(F, t, g); }});
            }
            return ms;
        },
        6));
    d.flags.barrelled = d.flags.mackey_complete = d.flags.baire = d.flags.montel = true;
    d.flags.exponentially_bounded = true;
    return d;
}

// --- uniformly negative exponents on the s matrix ---------------------------
inline DiagScenarioDef mult_uniform_baseline() {
    DiagScenarioDef d = mult_5_s_space();
    d.name = "mult-uniform-baseline";
    d.semigroup =
        make_diagonal(exponent_preset("constant:-0.5"), SeqSpace::C0A, builtin_matrix("s"));
    return d;
}

}  // namespace scenario_detail

inline const std::vector<ScenarioEntry>& scenario_registry() {
    static const std::vector<ScenarioEntry> reg = [] {
        std::vector<ScenarioEntry> r;
        auto diag = [&r](std::string name, std::string setting, std::string expected,
                         std::function<DiagScenarioDef()> make) {
            r.push_back({std::move(name), std::move(setting), std::move(expected),
                         ScenarioKind::Diagonal, std::move(make), nullptr});
        };
        auto fun = [&r](std::string name, std::string setting, std::string expected,
                        std::function<FunScenarioDef()> make) {
            r.push_back({std::move(name), std::move(setting), std::move(expected),
                         ScenarioKind::Function, nullptr, std::move(make)});
        };
        fun("shift-ptw-halfline-zero",
            "right shift on the half-line under pointwise evaluation seminorms", "TTTTTTT",
            scenario_detail::shift_ptw_halfline_zero);
        fun("shift-co-line", "right shift on the whole line, compact-open topology", "FFFFFFF",
            scenario_detail::shift_co_line);
        fun("shift-cc-co-line",
            "right shift of compactly supported functions, compact-open topology", "FFTTFFT",
            scenario_detail::shift_cc_co_line);
        fun("shift-cc-ind-halfline",
            "left shift absorbed at the half-line edge, weighted sup seminorms", "TTTTTTT",
            scenario_detail::shift_cc_ind_halfline);
        diag("mult-phi-supnorm", "diagonal multiplication on finite sequences, sup norm",
             "FFTTFFT", scenario_detail::mult_phi_supnorm);
        diag("mult-phi-directsum",
             "diagonal multiplication on finite sequences, direct-sum seminorms", "FFTTTTT",
             scenario_detail::mult_phi_directsum);
        diag("mult-c0-strong", "diagonal multiplication on c0, exponents -1/j", "FFFFFFT",
             scenario_detail::mult_c0_strong);
        diag("mult-cn-pointwise",
             "diagonal multiplication under pointwise-convergence levels, exponents -1/j",
             "FTFTTTT", scenario_detail::mult_cn_pointwise);
        diag("mult-5-s-space",
             "diagonal multiplication on rapidly decreasing sequences, exponents -1/j",
             "FFFFTTT", scenario_detail::mult_5_s_space);
        diag("mult-s-sqrt-ball",
             "diagonal multiplication on rapidly decreasing sequences, exponents -1/sqrt(j)",
             "FFFFTTT", scenario_detail::mult_s_sqrt_ball);
        diag("mult-M-montel-sqrt",
             "diagonal multiplication on the staircase Montel echelon, exponents -1/sqrt(j)",
             "FFFFFTT", scenario_detail::mult_M_montel_sqrt);
        diag("mult-8-m-not-s",
             "diagonal multiplication on the staircase Montel echelon, exponents -1/j",
             "FFFFFTT", scenario_detail::mult_8_m_not_s);
        fun("transport-decaying-q",
            "transport flow with coefficient q(x) = -1/(1+x^2), compact-open topology",
            "FFFFFFF", scenario_detail::transport_decaying_q);
        fun("transport-sin-minus-1",
            "transport flow with coefficient q(x) = sin(x) - 1, compact-open topology",
            "TTTTTTT", scenario_detail::transport_sin_minus_1);
        fun("heat-schwartz-qneg",
            "Fourier-side heat flow with potential -1, rapidly decreasing profiles", "TTTTTTT",
            scenario_detail::heat_schwartz_qneg);
        fun("heat-H-q0", "Fourier-side heat flow with zero potential, Sobolev levels",
            "FFFFFFT", scenario_detail::heat_H_q0);
        fun("mult-schwartz-interpolant",
            "multiplication by a smooth matching of -1/|x| on rapidly decreasing profiles",
            "FFFFTTT", scenario_detail::mult_schwartz_interpolant);
        diag("mult-uniform-baseline",
             "diagonal multiplication with the uniform exponent -0.5 on rapidly decreasing "
             "sequences",
             "TTTTTTT", scenario_detail::mult_uniform_baseline);
        return r;
    }();
    return reg;
}

inline const ScenarioEntry* find_scenario(const std::string& name) {
    for (const auto& e : scenario_registry())
        if (e.name == name) return &e;
    return nullptr;
}

// seven-character verdict row in hierarchy order; '?' marks Inconclusive,
// '-' marks NotEvaluated
inline std::string verdict_row(const StabilityReport& rep) {
    std::string row;
    for (auto p : all_properties) {
        switch (rep.at(p).verdict) {
            case Verdict::True: row += 'T'; break;
            case Verdict::False: row += 'F'; break;
            case Verdict::Inconclusive: row += '?'; break;
            default: row += '-'; break;
        }
    }
    return row;
}

struct ScenarioRun {
    StabilityReport report;
    std::vector<double> times;
    std::vector<std::pair<std::string, std::vector<double>>> trajectories;
};

inline ScenarioRun run_scenario(const ScenarioEntry& e,
                                const TruncationProfile& prof = TruncationProfile{}) {
    ScenarioRun out;
    out.times = prof.times.samples();
    if (e.kind == ScenarioKind::Diagonal) {
        DiagCertifier c(e.diagonal(), prof);
        out.report = c.run();
        out.trajectories = c.trajectory_table();
    } else {
        FunCertifier c(e.function(), prof);
        out.report = c.run();
        out.trajectories = c.trajectory_table();
    }
    return out;
}

inline ScenarioRun run_scenario(const std::string& name,
                                const TruncationProfile& prof = TruncationProfile{}) {
    const ScenarioEntry* e = find_scenario(name);
    if (!e) throw std::invalid_argument("unknown scenario: " + name);
    return run_scenario(*e, prof);
}

}  // namespace semistab
