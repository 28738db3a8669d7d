#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "semistab/config.hpp"
#include "semistab/datko.hpp"
#include "semistab/scenario.hpp"

using namespace semistab;

namespace {

std::vector<const ScenarioEntry*> diagonal_entries() {
    std::vector<const ScenarioEntry*> out;
    for (const auto& e : scenario_registry())
        if (e.kind == ScenarioKind::Diagonal) out.push_back(&e);
    return out;
}

// scaled-gate replay on an exact diagonal series
GateState scaled_gate(const DiagSeries& s, const std::vector<double>& times, double omega) {
    std::vector<double> v;
    v.reserve(times.size());
    for (double t : times) v.push_back(s.value(t));
    return classify_samples(times, scale_exp(times, v, omega)).state;
}

}  // namespace

TEST_CASE("closed-form oracle agrees with certification on every diagonal scenario") {
    const auto diags = diagonal_entries();
    REQUIRE(diags.size() == 9);
    for (const auto* e : diags) {
        INFO(e->name);
        const DiagScenarioDef def = e->diagonal();
        const StabilityReport got = certify_all(def);
        const StabilityReport want = classify_diagonal_oracle(def.semigroup, def.flags);
        CHECK(got.verdict_vector() == want.verdict_vector());
        CHECK(got.hierarchy_consistent);
        CHECK(want.hierarchy_consistent);
        CHECK(verdict_row(got) == e->expected);
    }
}

TEST_CASE("omega search grid is a fixed dyadic ladder") {
    const auto& grid = omega_grid();
    REQUIRE(grid.size() == 33);
    CHECK(grid.front() == Catch::Approx(std::pow(2.0, -10.0)).epsilon(1e-15));
    CHECK(grid.back() == Catch::Approx(16.0).epsilon(1e-15));
    for (std::size_t i = 1; i < grid.size(); ++i) {
        CHECK(grid[i] > grid[i - 1]);
        CHECK(grid[i] / grid[i - 1] == Catch::Approx(std::pow(2.0, 0.4375)).epsilon(1e-12));
    }
    // strict search below a margin picks the predecessor, never the margin
    const auto w = largest_omega_below(0.5);
    REQUIRE(w.has_value());
    CHECK(*w == Catch::Approx(std::pow(2.0, -1.25)).epsilon(1e-15));
    const auto at_member = largest_omega_below(*w);
    REQUIRE(at_member.has_value());
    CHECK(*at_member < *w);
    CHECK_FALSE(largest_omega_below(grid.front()).has_value());
}

TEST_CASE("uniform-exp certificate replays against the scaled trajectories") {
    const StabilityReport rep = certify_all(find_scenario("mult-uniform-baseline")->diagonal());
    const auto& cert = rep.at(Property::UniformlyExp).certificate;
    REQUIRE(rep.at(Property::UniformlyExp).verdict == Verdict::True);
    const double omega = cert.at("omega").get<double>();
    CHECK(omega == Catch::Approx(std::pow(2.0, -1.25)).epsilon(1e-15));
    CHECK(cert.at("rate_bound").get<double>() == Catch::Approx(-0.5).epsilon(1e-12));

    // replay: the certified scaling converges, the next grid step diverges
    const DiagScenarioDef def = find_scenario("mult-uniform-baseline")->diagonal();
    const auto times = TruncationProfile{}.times.samples();
    const DiagSeries s = build_diag_series(def.sems[2], def.targets[0],
                                           def.semigroup.exponents, 200);
    CHECK(scaled_gate(s, times, omega) == GateState::Converged);
    const double next_up = omega * std::pow(2.0, 0.4375);
    CHECK(next_up > 0.5);
    CHECK(scaled_gate(s, times, next_up) == GateState::Failed);
}

TEST_CASE("per-seminorm certificates stay below the level rates") {
    const StabilityReport rep = certify_all(find_scenario("mult-cn-pointwise")->diagonal());
    REQUIRE(rep.at(Property::PseudoUniformlyExp).verdict == Verdict::True);
    const auto& by_sem = rep.at(Property::PseudoUniformlyExp).certificate.at("omega_by_seminorm");
    // level k only sees indices j <= k, so its exact rate is -1/k
    for (int k = 1; k <= 5; ++k) {
        const double w = by_sem.at("k=" + std::to_string(k)).get<double>();
        CHECK(w < 1.0 / double(k));
        CHECK(w * std::pow(2.0, 0.4375) >= 1.0 / double(k));  // largest passing grid point
    }
}

TEST_CASE("exponential and polynomial scalings are pointwise products") {
    const std::vector<double> times = {0.5, 1.0, 2.0, 8.0};
    const std::vector<double> v = {1.0, 0.5, 0.125, 1e-3};
    const auto se = scale_exp(times, v, 0.25);
    const auto sp = scale_poly(times, v, 3.0);
    for (std::size_t i = 0; i < times.size(); ++i) {
        CHECK(se[i] == Catch::Approx(v[i] * std::exp(0.25 * times[i])).epsilon(1e-12));
        CHECK(sp[i] == Catch::Approx(v[i] * std::pow(times[i], 3.0)).epsilon(1e-12));
    }
    // the exponent is capped, not overflowed
    const auto capped = scale_exp({4000.0}, {1.0}, 1.0);
    CHECK(std::isfinite(capped[0]));
    CHECK(capped[0] == Catch::Approx(std::exp(700.0)).epsilon(1e-12));
}

TEST_CASE("scaling by omega matches shifting every exponent by omega") {
    // e^{omega t} q(T(t)x) for the rate-r semigroup equals q(T(t)x) for the
    // rate-(r+omega) semigroup on the same matrix and probe
    const KotheMatrix A = builtin_matrix("s");
    const std::vector<int> lv = {2};
    const auto sems = kothe_seminorms(A, lv);
    const DiagTarget probe = diag_probe_dense_decay();
    const auto times = TruncationProfile{}.times.samples();
    const double omega = 0.125;

    const DiagSeries base = build_diag_series(sems[0], probe,
                                              exponent_preset("constant:-0.5"), 200);
    ExponentSequence shifted = exponent_preset("constant:-0.5");
    const double target_rate = -0.5 + omega;
    shifted.q = [target_rate](std::size_t) { return Complex(target_rate, 0.0); };
    shifted.re_sup = target_rate;
    const DiagSeries moved = build_diag_series(sems[0], probe, shifted, 200);

    std::vector<double> raw;
    for (double t : times) raw.push_back(base.value(t));
    const auto scaled = scale_exp(times, raw, omega);
    for (std::size_t i = 0; i < times.size(); ++i)
        CHECK(scaled[i] == Catch::Approx(moved.value(times[i])).margin(1e-280).epsilon(1e-10));
}

TEST_CASE("datko integral matches the closed form on basis probes") {
    // for x = e_{j0} and level k the trajectory is a(j0,k) e^{-t/j0}, so
    // the beta-integral is a(j0,k)^beta / (beta |Re q_{j0}|)
    const KotheMatrix A = builtin_matrix("s");
    const ExponentSequence E = exponent_preset("-1/j");
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<std::size_t> j_dist(1, 200);
    std::uniform_int_distribution<int> k_dist(0, 5);
    const std::array<double, 4> betas = {1.0, 1.5, 2.0, 3.0};
    std::uniform_int_distribution<std::size_t> b_dist(0, betas.size() - 1);

    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t j0 = j_dist(rng);
        const int k = k_dist(rng);
        const double beta = betas[b_dist(rng)];
        INFO("j0=" << j0 << " k=" << k << " beta=" << beta);
        const auto sems = kothe_seminorms(A, {k});
        const DiagSeries s = build_diag_series(sems[0], diag_probe_basis(j0), E, 200);
        const DatkoResult d = datko_integral(s, beta);
        REQUIRE(d.finite);
        const double expect =
            std::pow(A(j0, k), beta) / (beta * std::abs(E(j0).real()));
        CHECK(d.value == Catch::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("same-seminorm integral bound predicts a replayable rate") {
    // uniform rate -0.5: every normalized integral is exactly 2, so the
    // predicted certificate is omega = 1/(2 N beta) = 0.25 and it replays
    const DiagScenarioDef base = find_scenario("mult-uniform-baseline")->diagonal();
    const auto rep = datko_same_seminorm(base.sems, base.targets, base.semigroup.exponents, 200,
                                         1.0, base.levels_unbounded);
    REQUIRE(rep.finite_all);
    CHECK(rep.uniform);
    CHECK(rep.n_uniform == Catch::Approx(2.0).epsilon(1e-9));
    CHECK(rep.omega == Catch::Approx(0.25).epsilon(1e-9));
    for (const auto& lv : rep.levels) {
        CHECK(lv.replay_ok);
        CHECK(lv.rate + lv.omega < 0.0);
    }

    // slow coordinates: the bound climbs through an unbounded level ladder
    const DiagScenarioDef cn = find_scenario("mult-cn-pointwise")->diagonal();
    const auto drift = datko_same_seminorm(cn.sems, cn.targets, cn.semigroup.exponents, 200,
                                           1.0, cn.levels_unbounded);
    REQUIRE(drift.finite_all);
    CHECK_FALSE(drift.uniform);
    const std::size_t n = drift.levels.size();
    REQUIRE(n >= 3);
    CHECK(drift.levels[n - 1].n_hat > drift.levels[n - 2].n_hat);
    CHECK(drift.levels[n - 2].n_hat > drift.levels[n - 3].n_hat);
}

TEST_CASE("hierarchy check accepts every scenario and rejects corrupted reports") {
    for (const auto& e : scenario_registry()) {
        INFO(e.name);
        StabilityReport rep = run_scenario(e).report;
        CHECK(rep.hierarchy_consistent);
        CHECK(rep.violated_edges.empty());

        // flip the weakest True / strongest False verdict and expect the
        // responsible edge to be named
        StabilityReport bad = rep;
        if (bad.at(Property::StronglyStable).verdict == Verdict::True) {
            bad.at(Property::StronglyStable).verdict = Verdict::False;
            const bool had_true =
                bad.at(Property::UniformlyStable).verdict == Verdict::True;
            apply_hierarchy_check(bad);
            if (had_true) {
                CHECK_FALSE(bad.hierarchy_consistent);
                REQUIRE_FALSE(bad.violated_edges.empty());
                CHECK(bad.violated_edges.back() == "uniformly-stable => strongly-stable");
            }
        } else {
            // all-False rows: forge a True at the top and break (i) => (ii)
            bad.at(Property::UniformlyExp).verdict = Verdict::True;
            apply_hierarchy_check(bad);
            CHECK_FALSE(bad.hierarchy_consistent);
            REQUIRE_FALSE(bad.violated_edges.empty());
            CHECK(bad.violated_edges.front() == "uniformly-exp => pseudo-uniformly-exp");
        }
    }
}

TEST_CASE("the gated hierarchy edge only binds under the declared hypotheses") {
    // finite sequences under the sup norm: pseudo-strong holds but
    // super-polynomial fails; consistent only because the gate is off
    const StabilityReport rep = certify_all(find_scenario("mult-phi-supnorm")->diagonal());
    CHECK(rep.at(Property::PseudoStronglyExp).verdict == Verdict::True);
    CHECK(rep.at(Property::SuperPolynomial).verdict == Verdict::False);
    CHECK(rep.hierarchy_consistent);

    StabilityReport gated = rep;
    gated.hypotheses.mackey_complete = gated.hypotheses.barrelled = true;
    gated.hypotheses.exponentially_bounded = true;
    apply_hierarchy_check(gated);
    CHECK_FALSE(gated.hierarchy_consistent);
    REQUIRE_FALSE(gated.violated_edges.empty());
    CHECK(gated.violated_edges.front() == "pseudo-strongly-exp => super-polynomial");
}

TEST_CASE("truncation-sensitive verdicts are flagged where escape is invisible") {
    // the sup-norm unit ball looks bounded at any finite truncation; the
    // False verdict comes from the family-escape rule and carries the flag
    const StabilityReport rep = certify_all(find_scenario("mult-phi-supnorm")->diagonal());
    const auto& vi = rep.at(Property::UniformlyStable);
    CHECK(vi.verdict == Verdict::False);
    CHECK(vi.truncation_sensitive);

    // exact-rate verdicts carry no flag
    const StabilityReport base = certify_all(find_scenario("mult-uniform-baseline")->diagonal());
    for (auto p : all_properties) CHECK_FALSE(base.at(p).truncation_sensitive);
}

TEST_CASE("unscaled ball pairing separates from uniform stability") {
    // staircase matrix: scaled ball norms stagnate at every pairing level,
    // yet the declared bounded sets decay unscaled
    const StabilityReport rep = certify_all(find_scenario("mult-8-m-not-s")->diagonal());
    CHECK(rep.at(Property::UniformlyStable).verdict == Verdict::True);
    const auto& ub = rep.extras.at("unscaled_ball_pairing");
    CHECK_FALSE(ub.at("holds").get<bool>());

    // the rapidly decreasing matrix pairs every level
    const StabilityReport s_rep = certify_all(find_scenario("mult-5-s-space")->diagonal());
    CHECK(s_rep.extras.at("unscaled_ball_pairing").at("holds").get<bool>());
    const auto& pairings = s_rep.at(Property::SuperPolynomial).certificate.at("pairings");
    const std::vector<std::pair<std::string, int>> expect = {
        {"k=0", 6}, {"k=1", 7}, {"k=2", 8}, {"k=3", 9}, {"k=5", 11}};
    for (const auto& [key, m] : expect) CHECK(pairings.at(key).get<int>() == m);
}

TEST_CASE("failure witnesses name the innermost failing combination") {
    const StabilityReport rep = certify_all(find_scenario("mult-5-s-space")->diagonal());
    const auto& wit = rep.at(Property::UniformlyExp).witness;
    REQUIRE(wit.is_object());
    CHECK(wit.contains("rule"));
    const std::string rule = wit.at("rule").get<std::string>();
    CHECK((rule == "level-trend" || rule == "index-trend" || rule == "family-escape" ||
           rule == "nonnegative-rate"));

    // strong-exp failures point at a concrete probe
    const auto& wit3 = rep.at(Property::StronglyExp).witness;
    REQUIRE(wit3.is_object());
    CHECK(wit3.contains("target"));
}

TEST_CASE("config pipeline reproduces a registered scenario end to end") {
    json doc = {
        {"kind", "diagonal"},
        {"exponents", "-1/j"},
        {"matrix", "cn"},
        {"levels", {1, 2, 3, 4, 5}},
        {"levels_unbounded", true},
        {"probes", {"e1", "mix", "ones"}},
        {"sets", {"ones-ball", "basis-family:bounded"}},
        {"ball_pairing", true},
        {"flags",
         {{"barrelled", true},
          {"mackey_complete", true},
          {"baire", true},
          {"montel", true},
          {"exponentially_bounded", true}}},
    };
    const ScenarioRun run = run_config(load_config(doc));
    CHECK(verdict_row(run.report) == "FTFTTTT");

    // heat profile: certificate below the potential's modulus
    json heat = {{"kind", "heat-fourier"}, {"q", -1.0}, {"seminorms", {{"schwartz", {0, 1, 3}}}}};
    const ScenarioRun hrun = run_config(load_config(heat));
    CHECK(hrun.report.at(Property::UniformlyExp).verdict == Verdict::True);
    const double w = hrun.report.at(Property::UniformlyExp).certificate.at("omega").get<double>();
    CHECK(w < 1.0);
    CHECK(w == Catch::Approx(std::pow(2.0, -0.375)).epsilon(1e-12));

    CHECK_THROWS_AS(load_config(json{{"kind", "diagonal"},
                                     {"exponents", "-1/j"},
                                     {"matrix", "cn"},
                                     {"levels", json::array()},
                                     {"probes", {"e1"}}}),
                    ConfigError);
    CHECK_THROWS_AS(
        load_config(json{{"kind", "heat-fourier"}, {"q", -1.0}, {"seminorms", json::object()}}),
        ConfigError);
}

TEST_CASE("reports serialize deterministically") {
    const StabilityReport a = certify_all(find_scenario("mult-phi-directsum")->diagonal());
    const StabilityReport b = certify_all(find_scenario("mult-phi-directsum")->diagonal());
    CHECK(a.to_json().dump(2) == b.to_json().dump(2));
}
