#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "semistab/scenario.hpp"

using namespace semistab;

namespace {

// one shared run per scenario; the registry sweep below fills the cache and
// the spot checks reuse it
const ScenarioRun& cached_run(const std::string& name) {
    static std::map<std::string, ScenarioRun> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, run_scenario(name)).first;
    return it->second;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("scenario registry lists eighteen uniquely named settings") {
    const auto& reg = scenario_registry();
    REQUIRE(reg.size() == 18);
    std::set<std::string> names;
    for (const auto& e : reg) {
        INFO(e.name);
        CHECK(names.insert(e.name).second);
        CHECK_FALSE(e.setting.empty());
        REQUIRE(e.expected.size() == 7);
        for (char c : e.expected) CHECK((c == 'T' || c == 'F'));
        if (e.kind == ScenarioKind::Diagonal) {
            CHECK(bool(e.diagonal));
            CHECK_FALSE(bool(e.function));
        } else {
            CHECK(bool(e.function));
            CHECK_FALSE(bool(e.diagonal));
        }
        CHECK(find_scenario(e.name) == &e);
    }
    CHECK(find_scenario("no-such-scenario") == nullptr);
}

TEST_CASE("every registered scenario reproduces its frozen verdict row") {
    const std::size_t n_times = TruncationProfile{}.times.samples().size();
    for (const auto& e : scenario_registry()) {
        INFO(e.name);
        const auto t0 = std::chrono::steady_clock::now();
        const ScenarioRun& run = cached_run(e.name);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        CHECK(secs < 60.0);
        CHECK(verdict_row(run.report) == e.expected);
        CHECK(run.report.scenario == e.name);
        CHECK(run.report.hierarchy_consistent);
        CHECK(run.report.violated_edges.empty());
        REQUIRE(run.times.size() == n_times);
        REQUIRE_FALSE(run.trajectories.empty());
        for (const auto& [label, values] : run.trajectories) {
            CHECK(contains(label, "|"));  // "target|seminorm"
            CHECK(values.size() == n_times);
        }
    }
}

TEST_CASE("finite-time annihilation earns the largest grid rate") {
    const StabilityReport& rep = cached_run("shift-ptw-halfline-zero").report;
    REQUIRE(rep.at(Property::UniformlyExp).verdict == Verdict::True);
    const auto& cert = rep.at(Property::UniformlyExp).certificate;
    CHECK(cert.at("omega").get<double>() == omega_grid().back());
    CHECK_FALSE(rep.hypotheses.exponentially_bounded);

    // each hat orbit dies in finite time, yet its peak passes x = 1 at height n
    const auto& esc = rep.extras.at("orbit_escape");
    REQUIRE(esc.at("samples").is_array());
    REQUIRE(esc.at("samples").size() == 5);
    for (const auto& s : esc.at("samples")) {
        const double n = s.at("n").get<double>();
        CHECK(s.at("t").get<double>() == Catch::Approx(1.0 / n).epsilon(1e-15));
        CHECK(s.at("value_at_1").get<double>() == Catch::Approx(n).epsilon(1e-12));
    }
}

TEST_CASE("family escape under member doubling defeats uniform stability") {
    const StabilityReport& rep = cached_run("shift-cc-co-line").report;
    const auto& us = rep.at(Property::UniformlyStable);
    REQUIRE(us.verdict == Verdict::False);
    CHECK(us.truncation_sensitive);
    CHECK(contains(us.detail, "declared family escapes under member doubling"));
    CHECK(us.witness.at("rule").get<std::string>() == "member-escape");
    CHECK(us.witness.at("member_count").get<std::size_t>() == 64);
    CHECK(us.witness.at("value_at_doubled_count").get<double>() >
          us.witness.at("value_at_count").get<double>());
    CHECK(rep.any_truncation_sensitive());

    // probes alone stay fine: the failure is carried by the set family
    CHECK(rep.at(Property::StronglyExp).verdict == Verdict::True);
    CHECK(rep.at(Property::StronglyStable).verdict == Verdict::True);
}

TEST_CASE("window integrals separate the two transport coefficients") {
    const StabilityReport& osc = cached_run("transport-sin-minus-1").report;
    const auto& ow = osc.extras.at("mu_window");
    CHECK(ow.at("decay_rate").get<double>() >= 0.9);
    CHECK_FALSE(ow.at("sup_not_localized").get<bool>());
    for (const auto& s : ow.at("samples"))
        CHECK(s.at("mu").get<double>() <= 2.0 - s.at("t").get<double>() + 1e-9);

    const StabilityReport& dec = cached_run("transport-decaying-q").report;
    const auto& dw = dec.extras.at("mu_window");
    CHECK(dw.at("sup_not_localized").get<bool>());
    for (const auto& s : dw.at("samples")) {
        CHECK(s.at("mu").get<double>() == 0.0);
        CHECK(s.at("sup_not_localized").get<bool>());
    }
    const auto& ss = dec.at(Property::StronglyStable);
    REQUIRE(ss.verdict == Verdict::False);
    CHECK(contains(ss.detail, "tail bounded away from zero"));
}

TEST_CASE("trajectories gliding through the floating-point floor keep their true rate") {
    // both decay like e^{-delta t} with delta slightly above 0.8; the samples
    // underflow to exact zero late in the horizon, and the fitted prefix rate
    // must still pin the certificate to the grid value just below the true rate
    const double expect = std::pow(2.0, -0.375);
    for (const char* name : {"transport-sin-minus-1", "heat-schwartz-qneg"}) {
        INFO(name);
        const StabilityReport& rep = cached_run(name).report;
        REQUIRE(rep.at(Property::UniformlyExp).verdict == Verdict::True);
        const auto& cert = rep.at(Property::UniformlyExp).certificate;
        CHECK(cert.at("omega").get<double>() == Catch::Approx(expect).epsilon(1e-15));
    }
}

TEST_CASE("a sub-exponential tail defeats every exponential scaling") {
    const StabilityReport& rep = cached_run("mult-schwartz-interpolant").report;
    const auto& se = rep.at(Property::StronglyExp);
    REQUIRE(se.verdict == Verdict::False);
    CHECK(contains(se.detail, "sub-exponential decay class"));
    // ... while polynomial scalings and unscaled decay both still hold
    CHECK(rep.at(Property::SuperPolynomial).verdict == Verdict::True);
    CHECK(rep.at(Property::UniformlyStable).verdict == Verdict::True);
}

TEST_CASE("heat flow with zero potential is strongly but not uniformly stable") {
    const StabilityReport& rep = cached_run("heat-H-q0").report;
    const auto& us = rep.at(Property::UniformlyStable);
    REQUIRE(us.verdict == Verdict::False);
    CHECK(contains(us.detail, "tail bounded away from zero"));
    CHECK(us.witness.at("rule").get<std::string>() == "unscaled-gate");
    const auto& ss = rep.at(Property::StronglyStable);
    REQUIRE(ss.verdict == Verdict::True);
    CHECK(ss.certificate.at("route").get<std::string>() == "unscaled-decay");
}

TEST_CASE("function-space extras carry the ball-condition disclaimer") {
    for (const auto& e : scenario_registry()) {
        if (e.kind != ScenarioKind::Function) continue;
        INFO(e.name);
        const StabilityReport& rep = cached_run(e.name).report;
        CHECK(rep.extras.at("ball_conditions").get<std::string>() ==
              "not evaluated for function-space scenarios");
    }
}

TEST_CASE("scenario reports serialize identically across reruns") {
    const std::string a = run_scenario("heat-H-q0").report.to_json().dump(2);
    const std::string b = run_scenario("heat-H-q0").report.to_json().dump(2);
    CHECK(a == b);
    CHECK_FALSE(a.empty());
}
