#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "semistab/bounded_sets.hpp"
#include "semistab/datko.hpp"
#include "semistab/decay.hpp"
#include "semistab/fun_semigroup.hpp"
#include "semistab/hierarchy.hpp"
#include "semistab/kothe.hpp"
#include "semistab/report.hpp"
#include "semistab/seminorms.hpp"
#include "semistab/seq_semigroup.hpp"
#include "semistab/trajectory.hpp"
#include "semistab/truncation.hpp"

namespace semistab {

// ---------------------------------------------------------------------------
// Scaling grids shared by every certificate search.  Certificates always
// report the largest grid value that passes.
// ---------------------------------------------------------------------------
inline const std::vector<double>& omega_grid() {
    static const std::vector<double> g = [] {
        std::vector<double> v;
        for (int k = 0; k <= 32; ++k) v.push_back(std::pow(2.0, -10.0 + 0.4375 * double(k)));
        return v;
    }();
    return g;
}

inline const std::vector<double>& alpha_grid() {
    static const std::vector<double> g = {1.1, 1.5, 2.0, 3.0, 5.0};
    return g;
}

inline std::optional<double> largest_omega_below(double margin) {
    std::optional<double> best;
    for (double w : omega_grid())
        if (w < margin) best = w;
    return best;
}

namespace detail {

inline std::string num_str(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Numeric gate on a sampled scaled trajectory.  Three-valued: a trajectory
// converges when its tail vanishes or fits a decaying model, fails when it
// grows or stays bounded away from zero, and is otherwise inconclusive.
// ---------------------------------------------------------------------------
enum class GateState { Converged, Failed, Inconclusive };

struct GateResult {
    GateState state = GateState::Inconclusive;
    std::string reason;
};

inline GateResult classify_samples(const std::vector<double>& times,
                                   const std::vector<double>& values) {
    GateResult g;
    bool all_zero = true;
    for (double v : values) all_zero = all_zero && v <= 1e-250;
    if (all_zero) {
        g.state = GateState::Converged;
        g.reason = "trajectory annihilated over the whole horizon";
        return g;
    }
    const RateEstimate fit = fit_decay(times, values);
    if (fit.annihilated) {
        g.state = GateState::Converged;
        g.reason = "tail annihilated";
        return g;
    }
    const std::size_t n = values.size();
    const std::size_t tail_len = std::max<std::size_t>(8, (n + 3) / 4);
    const std::size_t t0 = n - std::min(tail_len, n);
    double tail_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = t0; i < n; ++i) tail_min = std::min(tail_min, values[i]);
    const double tail_first = values[t0], tail_last = values[n - 1];
    if (fit.cls == RateClass::Divergent) {
        g.state = GateState::Failed;
        g.reason = "scaled trajectory grows through the horizon";
        return g;
    }
    if (tail_min >= 1e-6 && tail_last >= 0.8 * tail_first) {
        g.state = GateState::Failed;
        g.reason = "tail bounded away from zero";
        return g;
    }
    if (tail_last < 1e-8 || estimate_converges(fit)) {
        g.state = GateState::Converged;
        g.reason = std::string("tail vanishes (fit class ") + rate_class_name(fit.cls) + ")";
        return g;
    }
    g.reason = "tail neither vanishes nor fits a decaying model";
    return g;
}

// overflow-safe scalings for sampled trajectories
inline std::vector<double> scale_exp(const std::vector<double>& times,
                                     const std::vector<double>& v, double omega) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = v[i] <= 0.0 ? 0.0 : std::exp(std::min(std::log(v[i]) + omega * times[i], 700.0));
    return out;
}

inline std::vector<double> scale_poly(const std::vector<double>& times,
                                      const std::vector<double>& v, double alpha) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * std::pow(times[i], alpha);
    return out;
}

// ===========================================================================
// Sequence-space scenarios: exact exponential-sum trajectories.
// ===========================================================================
struct DiagScenarioDef {
    std::string name;
    DiagonalSemigroup semigroup;
    std::vector<DiagSem> sems;
    std::vector<int> kothe_levels;  // nonempty when sems are matrix levels
    bool levels_unbounded = false;  // declared family is a slice of an unbounded ladder
    std::vector<DiagTarget> targets;
    HypothesisFlags flags;
    bool ball_pairing = false;  // matrix-level pairing routes are meaningful
};

class DiagCertifier {
  public:
    explicit DiagCertifier(DiagScenarioDef def,
                           TruncationProfile prof = default_sequence_profile())
        : def_(std::move(def)), prof_(prof), times_(prof.times.samples()) {
        if (def_.sems.empty()) throw std::invalid_argument(def_.name + ": no seminorms declared");
        J_ = prof_.index_count;
        J2_ = 2 * J_;
        for (std::size_t i = 0; i < def_.targets.size(); ++i)
            (def_.targets[i].is_set ? set_ids_ : probe_ids_).push_back(i);
        if (probe_ids_.empty()) throw std::invalid_argument(def_.name + ": no probes declared");
        check_admissible();
    }

    const std::vector<double>& times() const { return times_; }

    StabilityReport run() {
        StabilityReport rep;
        rep.scenario = def_.name;
        rep.source = "certify";
        rep.truncation = J_;
        rep.t_max = times_.back();
        rep.hypotheses = def_.flags;
        rep.at(Property::UniformlyExp) = prop_uniform_exp();
        rep.at(Property::PseudoUniformlyExp) = prop_pseudo_uniform();
        rep.at(Property::StronglyExp) = prop_strong_exp();
        rep.at(Property::PseudoStronglyExp) = prop_pseudo_strong();
        rep.at(Property::SuperPolynomial) = prop_superpoly();
        rep.at(Property::UniformlyStable) = prop_uniform_stable();
        rep.at(Property::StronglyStable) = prop_strong_stable();
        rep.extras = build_extras();
        apply_hierarchy_check(rep);
        return rep;
    }

    // unscaled trajectories for export: one row per target x seminorm
    std::vector<std::pair<std::string, std::vector<double>>> trajectory_table() const {
        std::vector<std::pair<std::string, std::vector<double>>> rows;
        for (std::size_t t = 0; t < def_.targets.size(); ++t) {
            for (std::size_t s = 0; s < def_.sems.size(); ++s) {
                const DiagSeries& ser = S(s, t, false);
                std::vector<double> v;
                v.reserve(times_.size());
                for (double tt : times_) v.push_back(ser.value(tt));
                rows.emplace_back(def_.targets[t].name + "|" + def_.sems[s].label, std::move(v));
            }
        }
        return rows;
    }

  private:
    struct Combo {
        std::size_t sem, tgt;
    };

    DiagScenarioDef def_;
    TruncationProfile prof_;
    std::vector<double> times_;
    std::size_t J_ = 0, J2_ = 0;
    std::vector<std::size_t> set_ids_, probe_ids_;
    mutable std::map<std::tuple<std::size_t, std::size_t, bool>, DiagSeries> cache_;

    const DiagSeries& S(std::size_t sem, std::size_t tgt, bool doubled) const {
        const auto key = std::make_tuple(sem, tgt, doubled);
        auto it = cache_.find(key);
        if (it == cache_.end())
            it = cache_
                     .emplace(key, build_diag_series(def_.sems[sem], def_.targets[tgt],
                                                     def_.semigroup.exponents, doubled ? J2_ : J_))
                     .first;
        return it->second;
    }

    // Declared-bounded targets must have truncation-stable seminorms.
    void check_admissible() const {
        for (std::size_t t = 0; t < def_.targets.size(); ++t) {
            if (!def_.targets[t].bounded_in_limit) continue;
            for (std::size_t s = 0; s < def_.sems.size(); ++s) {
                const double vJ = S(s, t, false).value(0.0);
                const double v2 = S(s, t, true).value(0.0);
                if (v2 > 10.0 * std::max(vJ, 1e-300))
                    throw std::runtime_error(
                        def_.name + ": declared-bounded target '" + def_.targets[t].name +
                        "' grows under index doubling at seminorm " + def_.sems[s].label);
            }
        }
    }

    std::vector<std::size_t> all_sems() const {
        std::vector<std::size_t> v(def_.sems.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
        return v;
    }

    std::vector<std::size_t> pool(bool with_sets) const {
        std::vector<std::size_t> v = probe_ids_;
        if (with_sets) v.insert(v.end(), set_ids_.begin(), set_ids_.end());
        std::sort(v.begin(), v.end());  // declaration order
        return v;
    }

    std::vector<Combo> combos_for(const std::vector<std::size_t>& sems,
                                  const std::vector<std::size_t>& tgts) const {
        std::vector<Combo> cs;
        for (std::size_t s : sems)
            for (std::size_t t : tgts) cs.push_back({s, t});
        return cs;
    }

    struct RateInfo {
        double rate = -std::numeric_limits<double>::infinity();
        bool any_terms = false;
        Combo worst{0, 0};
        std::size_t binding_j = 0;
    };

    RateInfo sup_rate(const std::vector<Combo>& cs, bool doubled) const {
        RateInfo ri;
        for (const auto& cb : cs) {
            const DiagSeries& s = S(cb.sem, cb.tgt, doubled);
            if (s.empty()) continue;
            if (!ri.any_terms || s.rate > ri.rate) {
                ri.rate = s.rate;
                ri.worst = cb;
                ri.binding_j = s.rate_idx;
            }
            ri.any_terms = true;
        }
        return ri;
    }

    json combo_tag(const Combo& cb) const {
        return json{{"seminorm", def_.sems[cb.sem].label}, {"target", def_.targets[cb.tgt].name}};
    }

    // Rule: a rate-certificate search is rejected when the binding rate of the
    // quantified trajectories climbs toward zero under index doubling.
    bool index_drift(const std::vector<Combo>& cs, json* wit) const {
        if (!def_.semigroup.exponents.re_limit_zero) return false;
        const RateInfo a = sup_rate(cs, false);
        if (!a.any_terms || a.rate >= 0.0) return false;
        const RateInfo b = sup_rate(cs, true);
        const bool drift = b.rate > a.rate + 1e-6 * std::fabs(a.rate);
        if (drift && wit) {
            *wit = combo_tag(b.worst);
            (*wit)["rule"] = "index-trend";
            (*wit)["rate_at_truncation"] = a.rate;
            (*wit)["rate_at_doubled"] = b.rate;
            (*wit)["binding_index"] = a.binding_j;
            (*wit)["binding_index_doubled"] = b.binding_j;
        }
        return drift;
    }

    // Rule: on an unbounded seminorm ladder, binding rates that climb strictly
    // through the top three declared seminorms reject the level-uniform rate.
    bool level_trend(const std::vector<std::size_t>& tgts, json* wit) const {
        if (!def_.levels_unbounded || def_.sems.size() < 3) return false;
        std::vector<double> rates;
        for (std::size_t s = 0; s < def_.sems.size(); ++s) {
            const RateInfo ri = sup_rate(combos_for({s}, tgts), false);
            if (!ri.any_terms) return false;
            rates.push_back(ri.rate);
        }
        const std::size_t n = rates.size();
        auto inc = [](double lo, double hi) { return hi > lo + 1e-6 * std::fabs(lo); };
        const bool trend =
            rates[n - 1] < 0.0 && inc(rates[n - 3], rates[n - 2]) && inc(rates[n - 2], rates[n - 1]);
        if (trend && wit) {
            *wit = json{{"rule", "level-trend"},
                        {"seminorms",
                         json::array({def_.sems[n - 3].label, def_.sems[n - 2].label,
                                      def_.sems[n - 1].label})},
                        {"binding_rates", json::array({rates[n - 3], rates[n - 2], rates[n - 1]})}};
        }
        return trend;
    }

    // Rule: a declared-bounded set whose binding index rides the truncation
    // edge and whose envelope value grows under doubling is escaping to the
    // dropped indices; unscaled and polynomial verdicts on it are rejected.
    bool family_escape(std::size_t sem, std::size_t tgt, json* wit) const {
        const DiagTarget& T = def_.targets[tgt];
        if (!T.is_set || !T.bounded_in_limit) return false;
        const DiagSeries& sJ = S(sem, tgt, false);
        const DiagSeries& s2 = S(sem, tgt, true);
        if (sJ.empty() || s2.empty()) return false;
        const double tl = times_.back();
        const std::size_t bJ = sJ.binding_index(tl), b2 = s2.binding_index(tl);
        const double vJ = sJ.value(tl), v2 = s2.value(tl);
        const bool fire = double(bJ) >= 0.9 * double(J_) && double(b2) >= 0.9 * double(J2_) &&
                          v2 >= 1.05 * vJ && v2 >= 1e-6;
        if (fire && wit) {
            *wit = combo_tag({sem, tgt});
            (*wit)["rule"] = "family-escape";
            (*wit)["t"] = tl;
            (*wit)["value_at_truncation"] = vJ;
            (*wit)["value_at_doubled"] = v2;
            (*wit)["binding_index"] = bJ;
            (*wit)["binding_index_doubled"] = b2;
        }
        return fire;
    }

    // --- existential rate search over a combination list (exact gates) ------
    struct ExistsOmega {
        Verdict v = Verdict::Inconclusive;
        double omega = 0.0;
        double rate = -std::numeric_limits<double>::infinity();
        bool annihilated = false;
        json witness;
        std::string why;
        bool tsens = false;
    };

    // trend_tgts nonempty: additionally apply the level-trend rule over them
    ExistsOmega exists_omega(const std::vector<Combo>& cs,
                             const std::vector<std::size_t>& trend_tgts) const {
        ExistsOmega out;
        const RateInfo ri = sup_rate(cs, false);
        if (!ri.any_terms) {
            out.v = Verdict::True;
            out.omega = omega_grid().back();
            out.annihilated = true;
            out.why = "every quantified trajectory vanishes identically";
            return out;
        }
        out.rate = ri.rate;
        if (ri.rate >= 0.0) {
            out.v = Verdict::False;
            out.witness = combo_tag(ri.worst);
            out.witness["rule"] = "nonnegative-rate";
            out.witness["rate"] = ri.rate;
            out.witness["index"] = ri.binding_j;
            out.why = "a quantified trajectory carries a nonnegative rate";
            return out;
        }
        json wit;
        if (index_drift(cs, &wit)) {
            out.v = Verdict::False;
            out.witness = wit;
            out.why = "binding rate climbs toward zero under index doubling";
            out.tsens = true;
            return out;
        }
        if (!trend_tgts.empty() && level_trend(trend_tgts, &wit)) {
            out.v = Verdict::False;
            out.witness = wit;
            out.why = "binding rates climb strictly through the top declared seminorms";
            out.tsens = true;
            return out;
        }
        const auto w = largest_omega_below(-ri.rate);
        if (!w) {
            out.why = "slowest decay lies below the scaling grid";
            return out;
        }
        out.v = Verdict::True;
        out.omega = *w;
        out.why = "rate bound " + detail::num_str(ri.rate) + " dominated by grid scaling " +
                  detail::num_str(*w);
        return out;
    }

    static void stamp(PropertyResult& pr, const ExistsOmega& eo, const std::string& scope) {
        pr.verdict = eo.v;
        pr.witness = eo.witness;
        pr.truncation_sensitive = eo.tsens;
        pr.detail = scope + ": " + eo.why;
    }

    // --- the seven drivers --------------------------------------------------
    PropertyResult prop_uniform_exp() const {
        PropertyResult pr;
        const auto eo = exists_omega(combos_for(all_sems(), pool(true)), pool(true));
        stamp(pr, eo, "one rate over all declared seminorms, sets and probes");
        if (eo.v == Verdict::True) {
            pr.certificate = json{{"omega", eo.omega}};
            if (eo.annihilated)
                pr.certificate["note"] = "all trajectories vanish at truncation";
            else
                pr.certificate["rate_bound"] = eo.rate;
        }
        return pr;
    }

    PropertyResult prop_pseudo_uniform() const {
        PropertyResult pr;
        json cert = json::object();
        bool inconclusive = false;
        for (std::size_t s = 0; s < def_.sems.size(); ++s) {
            const auto eo = exists_omega(combos_for({s}, pool(true)), {});
            if (eo.v == Verdict::False) {
                stamp(pr, eo, "seminorm " + def_.sems[s].label);
                return pr;
            }
            if (eo.v != Verdict::True) {
                inconclusive = true;
                continue;
            }
            cert[def_.sems[s].label] = eo.omega;
        }
        if (inconclusive) {
            pr.verdict = Verdict::Inconclusive;
            pr.detail = "a per-seminorm rate search exhausted the scaling grid";
            return pr;
        }
        pr.verdict = Verdict::True;
        pr.certificate = json{{"omega_by_seminorm", cert}};
        pr.detail = "each declared seminorm admits its own grid rate over sets and probes";
        return pr;
    }

    PropertyResult prop_strong_exp() const {
        PropertyResult pr;
        json cert = json::object();
        bool inconclusive = false;
        for (std::size_t p : probe_ids_) {
            const auto eo = exists_omega(combos_for(all_sems(), {p}), {p});
            if (eo.v == Verdict::False) {
                stamp(pr, eo, "probe " + def_.targets[p].name);
                return pr;
            }
            if (eo.v != Verdict::True) {
                inconclusive = true;
                continue;
            }
            cert[def_.targets[p].name] = eo.omega;
        }
        if (inconclusive) {
            pr.verdict = Verdict::Inconclusive;
            pr.detail = "a per-probe rate search exhausted the scaling grid";
            return pr;
        }
        pr.verdict = Verdict::True;
        pr.certificate = json{{"omega_by_probe", cert}};
        pr.detail = "each declared probe admits its own grid rate across all seminorms";
        return pr;
    }

    PropertyResult prop_pseudo_strong() const {
        PropertyResult pr;
        json cert = json::object();
        bool inconclusive = false;
        for (std::size_t s = 0; s < def_.sems.size(); ++s) {
            for (std::size_t p : probe_ids_) {
                const auto eo = exists_omega(combos_for({s}, {p}), {});
                if (eo.v == Verdict::False) {
                    stamp(pr, eo,
                          "pair " + def_.sems[s].label + "|" + def_.targets[p].name);
                    return pr;
                }
                if (eo.v != Verdict::True) {
                    inconclusive = true;
                    continue;
                }
                cert[def_.sems[s].label + "|" + def_.targets[p].name] = eo.omega;
            }
        }
        if (inconclusive) {
            pr.verdict = Verdict::Inconclusive;
            pr.detail = "a per-pair rate search exhausted the scaling grid";
            return pr;
        }
        pr.verdict = Verdict::True;
        pr.certificate = json{{"omega_by_pair", cert}};
        pr.detail = "every seminorm/probe pair admits a grid rate";
        return pr;
    }

    // declared polynomial route: exact gates plus the family-escape rule
    struct RouteOutcome {
        Verdict v = Verdict::True;
        json witness;
        std::string why = "every declared trajectory decays, so all polynomial scalings converge";
        bool tsens = false;
    };

    RouteOutcome declared_poly_route() const {
        RouteOutcome out;
        for (std::size_t s = 0; s < def_.sems.size(); ++s) {
            for (std::size_t t : pool(true)) {
                const DiagSeries& ser = S(s, t, false);
                if (ser.empty()) continue;
                if (ser.rate >= 0.0) {
                    out.v = Verdict::False;
                    out.witness = combo_tag({s, t});
                    out.witness["rule"] = "nonnegative-rate";
                    out.witness["rate"] = ser.rate;
                    out.witness["index"] = ser.rate_idx;
                    out.why = "a nondecaying trajectory defeats every polynomial scaling";
                    return out;
                }
                json wit;
                if (family_escape(s, t, &wit)) {
                    out.v = Verdict::False;
                    out.witness = wit;
                    out.why = "declared set escapes to the dropped indices under doubling";
                    out.tsens = true;
                    return out;
                }
            }
        }
        return out;
    }

    // ball-pairing route: for each declared matrix level, either witness the
    // stagnation that defeats every pairing level, or record the smallest
    // pairing level whose scaled ball norm passes the numeric gate.
    struct BallRoute {
        enum class Kind { Skipped, False, Paired, Exhausted } kind = Kind::Skipped;
        json data;
        std::string note;
    };

    BallRoute ball_route_superpoly() const {
        BallRoute br;
        if (!def_.ball_pairing || def_.kothe_levels.empty()) {
            br.note = "pairing route skipped: no matrix-level pairing semantics declared";
            return br;
        }
        const auto& A = def_.semigroup.matrix;
        const int m_max = prof_.pairing_level_max;
        const double alpha = alpha_grid().back();
        json pairings = json::object();
        for (int k : def_.kothe_levels) {
            if (def_.semigroup.exponents.re_limit_zero) {
                const auto ws = witness_search_S_failure(A, k, m_max, def_.semigroup);
                if (ws.failure_witnessed) {
                    json wits = json::array();
                    for (const auto& w : ws.witnesses) {
                        wits.push_back(json{{"m", w.m},
                                            {"C", w.C},
                                            {"lower_bound", w.lower_bound},
                                            {"achieved", w.achieved},
                                            {"indices", w.j_n},
                                            {"times", w.t_n}});
                    }
                    br.kind = BallRoute::Kind::False;
                    br.data = json{{"rule", "ball-stagnation"}, {"level", k}, {"witnesses", wits}};
                    br.note = "scaled ball norms stagnate at every pairing level for level " +
                              std::to_string(k);
                    return br;
                }
            }
            bool found = false;
            for (int m = k; m <= m_max && !found; ++m) {
                std::vector<double> v;
                v.reserve(times_.size());
                bool finite = true;
                for (double t : times_) {
                    const double b = ball_operator_norm(A, k, m, def_.semigroup, t);
                    if (!std::isfinite(b)) {
                        finite = false;
                        break;
                    }
                    v.push_back(std::pow(t, alpha) * b);
                }
                if (!finite) continue;
                if (classify_samples(times_, v).state == GateState::Converged) {
                    pairings["k=" + std::to_string(k)] = m;
                    found = true;
                }
            }
            if (!found) {
                br.kind = BallRoute::Kind::Exhausted;
                br.note = "no pairing level up to m=" + std::to_string(m_max) +
                          " certifies the polynomial scaling at level " + std::to_string(k);
                return br;
            }
        }
        br.kind = BallRoute::Kind::Paired;
        br.data = pairings;
        br.note = "every declared level admits a pairing level";
        return br;
    }

    PropertyResult prop_superpoly() const {
        PropertyResult pr;
        const RouteOutcome dec = declared_poly_route();
        const BallRoute br = ball_route_superpoly();
        if (dec.v == Verdict::False) {
            pr.verdict = Verdict::False;
            pr.witness = dec.witness;
            pr.truncation_sensitive = dec.tsens;
            pr.detail = "declared route: " + dec.why;
            return pr;
        }
        switch (br.kind) {
            case BallRoute::Kind::False:
                pr.verdict = Verdict::False;
                pr.witness = br.data;
                pr.detail = "pairing route: " + br.note;
                return pr;
            case BallRoute::Kind::Paired:
                pr.verdict = Verdict::True;
                pr.certificate = json{{"alpha", alpha_grid().back()}, {"pairings", br.data}};
                pr.detail = "declared route converges and " + br.note;
                return pr;
            case BallRoute::Kind::Exhausted:
                pr.verdict = dec.v;
                pr.certificate = json{{"alpha", alpha_grid().back()},
                                      {"pairing_route", "exhausted without witness"}};
                pr.detail = "declared route: " + dec.why + "; " + br.note;
                return pr;
            case BallRoute::Kind::Skipped:
                pr.verdict = dec.v;
                pr.certificate = json{{"alpha", alpha_grid().back()}, {"pairing_route", "skipped"}};
                pr.detail = "declared route: " + dec.why + "; " + br.note;
                return pr;
        }
        return pr;
    }

    PropertyResult unscaled_over(const std::vector<std::size_t>& tgts, bool with_escape,
                                 const std::string& scope) const {
        PropertyResult pr;
        for (std::size_t s = 0; s < def_.sems.size(); ++s) {
            for (std::size_t t : tgts) {
                const DiagSeries& ser = S(s, t, false);
                if (ser.empty()) continue;
                if (ser.rate >= 0.0) {
                    pr.verdict = Verdict::False;
                    pr.witness = combo_tag({s, t});
                    pr.witness["rule"] = "nonnegative-rate";
                    pr.witness["rate"] = ser.rate;
                    pr.witness["index"] = ser.rate_idx;
                    pr.detail = scope + ": a trajectory never decays";
                    return pr;
                }
                json wit;
                if (with_escape && family_escape(s, t, &wit)) {
                    pr.verdict = Verdict::False;
                    pr.witness = wit;
                    pr.truncation_sensitive = true;
                    pr.detail =
                        scope + ": declared set escapes to the dropped indices under doubling";
                    return pr;
                }
            }
        }
        pr.verdict = Verdict::True;
        pr.certificate = json{{"route", "exact-envelope-decay"}};
        pr.detail = scope + ": every trajectory decays to zero unscaled";
        return pr;
    }

    PropertyResult prop_uniform_stable() const {
        return unscaled_over(pool(true), true, "sets and probes");
    }

    PropertyResult prop_strong_stable() const {
        return unscaled_over(probe_ids_, false, "probes");
    }

    // --- extras: variant routes and integral criteria -----------------------
    bool rate_drifts() const {
        if (!def_.semigroup.exponents.re_limit_zero) return false;
        const auto cs = combos_for(all_sems(), pool(true));
        const RateInfo a = sup_rate(cs, false), b = sup_rate(cs, true);
        return a.any_terms && a.rate < 0.0 && b.rate > a.rate + 1e-6 * std::fabs(a.rate);
    }

    json ball_route_uniform_exp() const {
        if (!def_.ball_pairing || def_.kothe_levels.empty())
            return json{{"note", "skipped: no matrix-level pairing semantics"}};
        const auto& A = def_.semigroup.matrix;
        const auto& E = def_.semigroup.exponents;
        const int m_max = prof_.pairing_level_max;
        // exact: per level the slowest rate among indices the ball norm sees,
        // with a finite weight-ratio bound
        double worst_rate = -std::numeric_limits<double>::infinity();
        json levels = json::array();
        for (int k : def_.kothe_levels) {
            int m_found = 0;
            double sup_ratio = 0.0, rate = -std::numeric_limits<double>::infinity();
            for (int m = k; m <= m_max && m_found == 0; ++m) {
                double sup = 0.0, r = -std::numeric_limits<double>::infinity();
                bool finite = true;
                for (std::size_t j = 1; j <= J_ && finite; ++j) {
                    const double q = weight_ratio(A(j, k), A(j, m));
                    if (std::isinf(q)) finite = false;
                    if (q > 0.0) {
                        sup = std::max(sup, q);
                        r = std::max(r, E(j).real());
                    }
                }
                if (finite) {
                    m_found = m;
                    sup_ratio = sup;
                    rate = r;
                }
            }
            if (m_found == 0) return json{{"holds", false}, {"note", "no finite pairing ratio"}};
            levels.push_back(
                json{{"level", k}, {"m", m_found}, {"ratio_bound", sup_ratio}, {"rate", rate}});
            worst_rate = std::max(worst_rate, rate);
        }
        const auto w = largest_omega_below(-worst_rate);
        return json{{"holds", w.has_value() && worst_rate < 0.0},
                    {"omega_at_truncation", w ? json(*w) : json()},
                    {"rate_bound", worst_rate},
                    {"levels", levels},
                    {"rate_drifts", rate_drifts()}};
    }

    json negative_rate_envelope() const {
        if (!def_.ball_pairing || def_.kothe_levels.empty())
            return json{{"note", "skipped: no matrix-level pairing semantics"}};
        const auto& A = def_.semigroup.matrix;
        const auto& E = def_.semigroup.exponents;
        const int m_max = prof_.pairing_level_max;
        // exact envelope bound a(j,k) e^{t Re q_j} <= M e^{-omega t} a(j,m):
        // needs Re q_j <= -omega wherever a(j,k) > 0 and M = sup ratio finite
        double rate = -std::numeric_limits<double>::infinity();
        json levels = json::array();
        for (int k : def_.kothe_levels) {
            int m_found = 0;
            double M = 0.0;
            for (int m = k; m <= m_max && m_found == 0; ++m) {
                double sup = 0.0;
                bool finite = true;
                for (std::size_t j = 1; j <= J_ && finite; ++j) {
                    const double q = weight_ratio(A(j, k), A(j, m));
                    if (std::isinf(q)) finite = false;
                    sup = std::max(sup, q);
                }
                if (finite) {
                    m_found = m;
                    M = sup;
                }
            }
            if (m_found == 0) return json{{"holds", false}, {"note", "no finite envelope ratio"}};
            levels.push_back(json{{"level", k}, {"m", m_found}, {"M", M}});
            for (std::size_t j = 1; j <= J_; ++j)
                if (A(j, k) > 0.0) rate = std::max(rate, E(j).real());
        }
        // equality is allowed in the rate comparison, so search non-strictly
        std::optional<double> w;
        for (double g : omega_grid())
            if (g <= -rate) w = g;
        return json{{"holds", w.has_value() && rate < 0.0},
                    {"omega_at_truncation", w ? json(*w) : json()},
                    {"rate_bound", rate},
                    {"levels", levels},
                    {"rate_drifts", rate_drifts()}};
    }

    json unscaled_ball_pairing() const {
        if (!def_.ball_pairing || def_.kothe_levels.empty())
            return json{{"note", "skipped: no matrix-level pairing semantics"}};
        const auto& A = def_.semigroup.matrix;
        const int m_max = prof_.pairing_level_max;
        const bool limit_zero = def_.semigroup.exponents.re_limit_zero;
        bool holds = true;
        json levels = json::array();
        for (int k : def_.kothe_levels) {
            int m_found = 0;
            for (int m = k; m <= m_max && m_found == 0; ++m) {
                if (limit_zero) {
                    // stagnant ratio window: this pairing level cannot work
                    const double m_full = detail::window_max_ratio(A, k, m, J_);
                    const double m_half = detail::window_max_ratio(A, k, m, J_ / 2);
                    if (m_full > 1e-12 && m_full >= 0.6 * m_half) continue;
                }
                std::vector<double> v;
                v.reserve(times_.size());
                bool finite = true;
                for (double t : times_) {
                    const double b = ball_operator_norm(A, k, m, def_.semigroup, t);
                    if (!std::isfinite(b)) {
                        finite = false;
                        break;
                    }
                    v.push_back(b);
                }
                if (finite && classify_samples(times_, v).state == GateState::Converged)
                    m_found = m;
            }
            holds = holds && m_found > 0;
            levels.push_back(json{{"level", k},
                                  {"m", m_found > 0 ? json(m_found) : json()},
                                  {"holds", m_found > 0}});
        }
        return json{{"holds", holds}, {"levels", levels}};
    }

    json datko_summary() const {
        json rows = json::array();
        for (std::size_t s = 0; s < def_.sems.size(); ++s) {
            for (std::size_t p : probe_ids_) {
                for (double beta : {1.0, 2.0}) {
                    const DatkoResult d = datko_integral(S(s, p, false), beta, times_.back());
                    rows.push_back(json{{"seminorm", def_.sems[s].label},
                                        {"probe", def_.targets[p].name},
                                        {"beta", beta},
                                        {"finite", d.finite},
                                        {"value", d.finite ? json(d.value) : json()}});
                }
            }
        }
        return rows;
    }

    json per_target_poly() const {
        json rows = json::array();
        for (std::size_t t : pool(true)) {
            double rate = -std::numeric_limits<double>::infinity();
            bool any = false;
            for (std::size_t s = 0; s < def_.sems.size(); ++s) {
                const DiagSeries& ser = S(s, t, false);
                if (ser.empty()) continue;
                any = true;
                rate = std::max(rate, ser.rate);
            }
            rows.push_back(json{{"target", def_.targets[t].name},
                                {"rate", any ? json(rate) : json()},
                                {"alpha", (!any || rate < 0.0) ? json(alpha_grid().back()) : json()}});
        }
        return rows;
    }

    json build_extras() const {
        json ex = json::object();
        ex["uniform_exp_ball_route"] = ball_route_uniform_exp();
        ex["negative_rate_envelope"] = negative_rate_envelope();
        ex["unscaled_ball_pairing"] = unscaled_ball_pairing();
        ex["per_target_poly"] = per_target_poly();
        ex["datko"] = datko_summary();
        ex["datko_same_seminorm"] =
            datko_same_seminorm(def_.sems, def_.targets, def_.semigroup.exponents, J_, 1.0,
                                def_.levels_unbounded, times_.back())
                .to_json();
        return ex;
    }
};

// ===========================================================================
// Function-space scenarios: sampled trajectories with numeric gates.
// ===========================================================================
struct FunScenarioDef {
    std::string name;
    std::vector<SeminormTag> sems;
    std::vector<FunTarget> targets;
    HypothesisFlags flags;
    double radius = 20.0;
    double radius_cap = 8192.0;
    std::size_t grid_points = 4097;
    json extras_seed = json::object();
};

class FunCertifier {
  public:
    explicit FunCertifier(FunScenarioDef def, TruncationProfile prof = default_function_profile())
        : def_(std::move(def)), prof_(prof), times_(prof.times.samples()) {
        if (def_.sems.empty()) throw std::invalid_argument(def_.name + ": no seminorms declared");
        for (std::size_t i = 0; i < def_.targets.size(); ++i)
            (def_.targets[i].is_set ? set_ids_ : probe_ids_).push_back(i);
        if (probe_ids_.empty()) throw std::invalid_argument(def_.name + ": no probes declared");
    }

    const std::vector<double>& times() const { return times_; }

    StabilityReport run() {
        StabilityReport rep;
        rep.scenario = def_.name;
        rep.source = "certify";
        rep.truncation = prof_.index_count;
        rep.t_max = times_.back();
        rep.hypotheses = def_.flags;
        rep.at(Property::UniformlyExp) = prop_uniform_exp();
        rep.at(Property::PseudoUniformlyExp) = prop_pseudo_uniform();
        rep.at(Property::StronglyExp) = prop_strong_exp();
        rep.at(Property::PseudoStronglyExp) = prop_pseudo_strong();
        rep.at(Property::SuperPolynomial) = prop_superpoly();
        rep.at(Property::UniformlyStable) = prop_uniform_stable();
        rep.at(Property::StronglyStable) = prop_strong_stable();
        rep.extras = build_extras();
        apply_hierarchy_check(rep);
        return rep;
    }

    std::vector<std::pair<std::string, std::vector<double>>> trajectory_table() {
        std::vector<std::pair<std::string, std::vector<double>>> rows;
        for (std::size_t t = 0; t < def_.targets.size(); ++t)
            for (std::size_t s = 0; s < def_.sems.size(); ++s)
                rows.emplace_back(def_.targets[t].name + "|" + def_.sems[s].label(),
                                  S(s, t, false).v);
        return rows;
    }

  private:
    struct Combo {
        std::size_t sem, tgt;
    };

    struct Series {
        std::vector<double> v;
        RateEstimate fit;
        bool all_zero = true;
    };

    FunScenarioDef def_;
    TruncationProfile prof_;
    std::vector<double> times_;
    std::vector<std::size_t> set_ids_, probe_ids_;
    std::map<std::pair<std::size_t, std::size_t>, Series> base_, doubled_;
    std::set<std::string> warnings_;

    const Series& S(std::size_t sem, std::size_t tgt, bool doubled) {
        auto& store = doubled ? doubled_ : base_;
        const auto key = std::make_pair(sem, tgt);
        auto it = store.find(key);
        if (it != store.end()) return it->second;
        const FunTarget& T = def_.targets[tgt];
        const std::size_t count = doubled ? 2 * T.member_count : T.member_count;
        Series s;
        s.v.assign(times_.size(), 0.0);
        for (const auto& m : T.members(count)) {
            for (std::size_t i = 0; i < times_.size(); ++i) {
                const GridFunction g = m.at(times_[i]);
                const FunSemEval ev =
                    fun_seminorm(def_.sems[sem], g, def_.radius, def_.radius_cap, def_.grid_points);
                if (ev.radius_capped)
                    warnings_.insert("window capped at radius " +
                                     detail::num_str(ev.radius_used) + " for " + T.name + "|" +
                                     def_.sems[sem].label());
                s.v[i] = std::max(s.v[i], ev.value);
            }
        }
        double vmax = 0.0;
        for (double x : s.v) vmax = std::max(vmax, x);
        s.all_zero = vmax <= 1e-250;
        s.fit = fit_decay(times_, s.v);
        return store.emplace(key, std::move(s)).first->second;
    }

    std::vector<std::size_t> pool(bool with_sets) const {
        std::vector<std::size_t> v = probe_ids_;
        if (with_sets) v.insert(v.end(), set_ids_.begin(), set_ids_.end());
        std::sort(v.begin(), v.end());
        return v;
    }

    std::vector<std::size_t> all_sems() const {
        std::vector<std::size_t> v(def_.sems.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
        return v;
    }

    std::vector<Combo> combos_for(const std::vector<std::size_t>& sems,
                                  const std::vector<std::size_t>& tgts) const {
        std::vector<Combo> cs;
        for (std::size_t s : sems)
            for (std::size_t t : tgts) cs.push_back({s, t});
        return cs;
    }

    json combo_tag(const Combo& cb) const {
        return json{{"seminorm", def_.sems[cb.sem].label()},
                    {"target", def_.targets[cb.tgt].name}};
    }

    // Rule: a declared-bounded member family whose working supremum grows at
    // some sampled time under member doubling is escaping the declared
    // family; every verdict on it is rejected.  Families with a declared
    // common support radius annihilate wholesale and are exempt.
    bool family_escape(std::size_t sem, std::size_t tgt, json* wit) {
        const FunTarget& T = def_.targets[tgt];
        if (!T.is_set || !T.bounded_in_limit || !T.family || T.support_radius > 0.0) return false;
        const Series& a = S(sem, tgt, false);
        const Series& b = S(sem, tgt, true);
        for (std::size_t i = 0; i < times_.size(); ++i) {
            const bool fire = b.v[i] >= 1e-6 && b.v[i] >= 1.05 * std::max(a.v[i], 1e-12) &&
                              b.v[i] - a.v[i] > 1e-6;
            if (fire) {
                if (wit) {
                    *wit = combo_tag({sem, tgt});
                    (*wit)["rule"] = "member-escape";
                    (*wit)["t"] = times_[i];
                    (*wit)["value_at_count"] = a.v[i];
                    (*wit)["value_at_doubled_count"] = b.v[i];
                    (*wit)["member_count"] = T.member_count;
                }
                return true;
            }
        }
        return false;
    }

    // numeric gates; mode 0 = unscaled, 1 = e^{omega t}, 2 = t^alpha
    GateResult gate(const Series& s, int mode, double param) const {
        GateResult g;
        if (s.all_zero) {
            g.state = GateState::Converged;
            g.reason = "trajectory annihilated over the whole horizon";
            return g;
        }
        if (s.fit.annihilated) {
            g.state = GateState::Converged;
            g.reason = "tail annihilated";
            return g;
        }
        // Sub-exponential fit class on a numerically alive tail defeats every
        // e^{omega t} scaling in the limit even when the scaled series still
        // decreases inside the horizon.  Tails at or below the annihilation
        // floor are indistinguishable from exponential death and are not
        // vetoed.
        if (mode == 1 &&
            (s.fit.cls == RateClass::Polynomial || s.fit.cls == RateClass::SuperpolySubexp) &&
            s.v.back() > 1e-250) {
            g.state = GateState::Failed;
            g.reason = std::string("sub-exponential decay class (") +
                       rate_class_name(s.fit.cls) + "): no exponential scaling converges";
            return g;
        }
        if (mode == 1) {
            // A series whose positive samples glide below the representable
            // floor before going to exact zero died by decay, not by leaving
            // the seminorm's window; e^{omega t} times the underflowed zeros
            // would fake convergence at every omega, so decide by the fitted
            // rate of the positive prefix instead.
            std::vector<double> pt, plv;
            double min_pos = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < s.v.size(); ++i) {
                if (s.v[i] > 1e-250) {
                    pt.push_back(times_[i]);
                    plv.push_back(std::log(s.v[i]));
                    min_pos = std::min(min_pos, s.v[i]);
                }
            }
            if (pt.size() < s.v.size() && !pt.empty() && min_pos < 1e-200) {
                if (pt.size() < 8) {
                    g.state = GateState::Converged;
                    g.reason = "trajectory decays through the floating-point floor almost "
                               "immediately";
                    return g;
                }
                const LinFit f = linear_fit(pt, plv);
                if (param < -f.slope) {
                    g.state = GateState::Converged;
                    g.reason = "fitted decay rate " + detail::num_str(-f.slope) +
                               " dominates the scaling";
                } else {
                    g.state = GateState::Failed;
                    g.reason = "scaling exceeds the fitted decay rate " +
                               detail::num_str(-f.slope);
                }
                return g;
            }
        }
        if (mode == 0) return classify_samples(times_, s.v);
        if (mode == 1) return classify_samples(times_, scale_exp(times_, s.v, param));
        return classify_samples(times_, scale_poly(times_, s.v, param));
    }

    struct ExistsOmega {
        Verdict v = Verdict::Inconclusive;
        double omega = 0.0;
        json witness;
        std::string why;
        bool tsens = false;
    };

    ExistsOmega exists_omega(const std::vector<Combo>& cs) {
        ExistsOmega out;
        // member-escape vetoes the combination at every scaling
        for (const auto& cb : cs) {
            json wit;
            if (family_escape(cb.sem, cb.tgt, &wit)) {
                out.v = Verdict::False;
                out.witness = wit;
                out.why = "declared family escapes under member doubling";
                out.tsens = true;
                return out;
            }
        }
        const auto& grid = omega_grid();
        bool every_omega_failed = true;
        json smallest_fail;
        std::string smallest_reason;
        for (std::size_t gi = grid.size(); gi-- > 0;) {  // descend: largest first
            const double w = grid[gi];
            bool all_conv = true, any_fail = false;
            json fail_wit;
            std::string fail_reason;
            for (const auto& cb : cs) {
                const GateResult gr = gate(S(cb.sem, cb.tgt, false), 1, w);
                if (gr.state == GateState::Converged) continue;
                all_conv = false;
                if (gr.state == GateState::Failed && !any_fail) {
                    any_fail = true;
                    fail_wit = combo_tag(cb);
                    fail_wit["omega"] = w;
                    fail_wit["rule"] = "scaled-gate";
                    fail_wit["reason"] = gr.reason;
                    fail_reason = gr.reason;
                }
            }
            if (all_conv) {
                out.v = Verdict::True;
                out.omega = w;
                out.why = "grid scaling " + detail::num_str(w) + " converges on every trajectory";
                return out;
            }
            if (!any_fail) every_omega_failed = false;
            if (any_fail) {
                smallest_fail = fail_wit;  // overwritten until the smallest grid value
                smallest_reason = fail_reason;
            }
        }
        if (every_omega_failed) {
            out.v = Verdict::False;
            out.witness = smallest_fail;
            out.why = "every grid scaling fails: " + smallest_reason;
            return out;
        }
        out.why = "no grid scaling converges on every trajectory, none decisively fails";
        return out;
    }

    static void stamp(PropertyResult& pr, const ExistsOmega& eo, const std::string& scope) {
        pr.verdict = eo.v;
        pr.witness = eo.witness;
        pr.truncation_sensitive = eo.tsens;
        pr.detail = scope + ": " + eo.why;
    }

    PropertyResult prop_uniform_exp() {
        PropertyResult pr;
        const auto eo = exists_omega(combos_for(all_sems(), pool(true)));
        stamp(pr, eo, "one rate over all declared seminorms, sets and probes");
        if (eo.v == Verdict::True) pr.certificate = json{{"omega", eo.omega}};
        return pr;
    }

    PropertyResult prop_pseudo_uniform() {
        PropertyResult pr;
        json cert = json::object();
        bool inconclusive = false;
        for (std::size_t s = 0; s < def_.sems.size(); ++s) {
            const auto eo = exists_omega(combos_for({s}, pool(true)));
            if (eo.v == Verdict::False) {
                stamp(pr, eo, "seminorm " + def_.sems[s].label());
                return pr;
            }
            if (eo.v != Verdict::True) {
                inconclusive = true;
                continue;
            }
            cert[def_.sems[s].label()] = eo.omega;
        }
        if (inconclusive) {
            pr.verdict = Verdict::Inconclusive;
            pr.detail = "a per-seminorm rate search stayed undecided";
            return pr;
        }
        pr.verdict = Verdict::True;
        pr.certificate = json{{"omega_by_seminorm", cert}};
        pr.detail = "each declared seminorm admits its own grid rate over sets and probes";
        return pr;
    }

    PropertyResult prop_strong_exp() {
        PropertyResult pr;
        json cert = json::object();
        bool inconclusive = false;
        for (std::size_t p : probe_ids_) {
            const auto eo = exists_omega(combos_for(all_sems(), {p}));
            if (eo.v == Verdict::False) {
                stamp(pr, eo, "probe " + def_.targets[p].name);
                return pr;
            }
            if (eo.v != Verdict::True) {
                inconclusive = true;
                continue;
            }
            cert[def_.targets[p].name] = eo.omega;
        }
        if (inconclusive) {
            pr.verdict = Verdict::Inconclusive;
            pr.detail = "a per-probe rate search stayed undecided";
            return pr;
        }
        pr.verdict = Verdict::True;
        pr.certificate = json{{"omega_by_probe", cert}};
        pr.detail = "each declared probe admits its own grid rate across all seminorms";
        return pr;
    }

    PropertyResult prop_pseudo_strong() {
        PropertyResult pr;
        json cert = json::object();
        bool inconclusive = false;
        for (std::size_t s = 0; s < def_.sems.size(); ++s) {
            for (std::size_t p : probe_ids_) {
                const auto eo = exists_omega(combos_for({s}, {p}));
                if (eo.v == Verdict::False) {
                    stamp(pr, eo, "pair " + def_.sems[s].label() + "|" + def_.targets[p].name);
                    return pr;
                }
                if (eo.v != Verdict::True) {
                    inconclusive = true;
                    continue;
                }
                cert[def_.sems[s].label() + "|" + def_.targets[p].name] = eo.omega;
            }
        }
        if (inconclusive) {
            pr.verdict = Verdict::Inconclusive;
            pr.detail = "a per-pair rate search stayed undecided";
            return pr;
        }
        pr.verdict = Verdict::True;
        pr.certificate = json{{"omega_by_pair", cert}};
        pr.detail = "every seminorm/probe pair admits a grid rate";
        return pr;
    }

    PropertyResult prop_superpoly() {
        PropertyResult pr;
        bool inconclusive = false;
        json inc_note;
        for (double alpha : alpha_grid()) {
            for (std::size_t s = 0; s < def_.sems.size(); ++s) {
                for (std::size_t t : pool(true)) {
                    json wit;
                    if (family_escape(s, t, &wit)) {
                        pr.verdict = Verdict::False;
                        pr.witness = wit;
                        pr.truncation_sensitive = true;
                        pr.detail = "declared family escapes under member doubling";
                        return pr;
                    }
                    const GateResult gr = gate(S(s, t, false), 2, alpha);
                    if (gr.state == GateState::Failed) {
                        pr.verdict = Verdict::False;
                        pr.witness = combo_tag({s, t});
                        pr.witness["alpha"] = alpha;
                        pr.witness["rule"] = "polynomial-gate";
                        pr.witness["reason"] = gr.reason;
                        pr.detail = "a polynomial scaling fails: " + gr.reason;
                        return pr;
                    }
                    if (gr.state == GateState::Inconclusive) {
                        inconclusive = true;
                        inc_note = combo_tag({s, t});
                        inc_note["alpha"] = alpha;
                    }
                }
            }
        }
        if (inconclusive) {
            pr.verdict = Verdict::Inconclusive;
            pr.witness = inc_note;
            pr.detail = "a polynomial gate stayed undecided";
            return pr;
        }
        pr.verdict = Verdict::True;
        pr.certificate = json{{"alpha", alpha_grid().back()},
                              {"pairing_route", "not evaluated for function-space scenarios"}};
        pr.detail = "every declared polynomial scaling converges on sets and probes";
        return pr;
    }

    PropertyResult unscaled_over(const std::vector<std::size_t>& tgts, bool with_escape,
                                 const std::string& scope) {
        PropertyResult pr;
        bool inconclusive = false;
        json inc_note;
        for (std::size_t s = 0; s < def_.sems.size(); ++s) {
            for (std::size_t t : tgts) {
                json wit;
                if (with_escape && family_escape(s, t, &wit)) {
                    pr.verdict = Verdict::False;
                    pr.witness = wit;
                    pr.truncation_sensitive = true;
                    pr.detail = scope + ": declared family escapes under member doubling";
                    return pr;
                }
                const GateResult gr = gate(S(s, t, false), 0, 0.0);
                if (gr.state == GateState::Failed) {
                    pr.verdict = Verdict::False;
                    pr.witness = combo_tag({s, t});
                    pr.witness["rule"] = "unscaled-gate";
                    pr.witness["reason"] = gr.reason;
                    pr.detail = scope + ": " + gr.reason;
                    return pr;
                }
                if (gr.state == GateState::Inconclusive) {
                    inconclusive = true;
                    inc_note = combo_tag({s, t});
                }
            }
        }
        if (inconclusive) {
            pr.verdict = Verdict::Inconclusive;
            pr.witness = inc_note;
            pr.detail = scope + ": an unscaled gate stayed undecided";
            return pr;
        }
        pr.verdict = Verdict::True;
        pr.certificate = json{{"route", "unscaled-decay"}};
        pr.detail = scope + ": every trajectory decays to zero unscaled";
        return pr;
    }

    PropertyResult prop_uniform_stable() { return unscaled_over(pool(true), true, "sets and probes"); }

    PropertyResult prop_strong_stable() { return unscaled_over(probe_ids_, false, "probes"); }

    json build_extras() {
        json ex = def_.extras_seed.is_object() ? def_.extras_seed : json::object();
        ex["ball_conditions"] = "not evaluated for function-space scenarios";
        if (!warnings_.empty()) {
            json w = json::array();
            for (const auto& s : warnings_) w.push_back(s);
            ex["numeric_warnings"] = w;
        }
        return ex;
    }
};

// ---------------------------------------------------------------------------
// Convenience wrappers.
// ---------------------------------------------------------------------------
inline StabilityReport certify_all(const DiagScenarioDef& def,
                                   const TruncationProfile& prof = default_sequence_profile()) {
    return DiagCertifier(def, prof).run();
}

inline StabilityReport certify_all(const FunScenarioDef& def,
                                   const TruncationProfile& prof = default_function_profile()) {
    return FunCertifier(def, prof).run();
}

inline PropertyResult certify(const DiagScenarioDef& def, Property p,
                              const TruncationProfile& prof = default_sequence_profile()) {
    return certify_all(def, prof).at(p);
}

inline PropertyResult certify(const FunScenarioDef& def, Property p,
                              const TruncationProfile& prof = default_function_profile()) {
    return certify_all(def, prof).at(p);
}

}  // namespace semistab
