#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "semistab/decay.hpp"
#include "semistab/quadrature.hpp"
#include "semistab/trajectory.hpp"

namespace semistab {

// ---------------------------------------------------------------------------
// Orbit integral int_0^inf q(T(t)x)^beta dt for an exact exponential-sum
// trajectory: adaptive quadrature to t_max plus the geometric tail bound
//     tail <= value(t_max)^beta / (beta |rate|),
// valid because value(t) <= value(t_max) e^{rate (t - t_max)} beyond t_max.
// The bound is exact for single-term trajectories.
// ---------------------------------------------------------------------------
struct DatkoResult {
    bool finite = false;
    double value = std::numeric_limits<double>::infinity();
    double head = 0.0;  // quadrature over [0, t_max]
    double tail = 0.0;  // geometric bound beyond t_max
    std::string note;
};

inline DatkoResult datko_integral(const DiagSeries& s, double beta, double t_max = 1e3) {
    if (beta < 1.0) throw std::invalid_argument("datko_integral: beta below one");
    DatkoResult out;
    if (s.empty()) {
        out.finite = true;
        out.value = 0.0;
        out.note = "trajectory vanishes identically";
        return out;
    }
    if (s.rate >= 0.0) {
        out.note = "a non-decaying term keeps the integrand bounded away from zero";
        return out;
    }
    const auto head = integrate([&](double t) { return std::pow(s.value(t), beta); }, 0.0, t_max,
                                1e-12, 1e-11, 20000);
    out.head = head.value;
    out.tail = std::pow(s.value(t_max), beta) / (beta * std::fabs(s.rate));
    out.value = out.head + out.tail;
    out.finite = true;
    out.note = head.converged ? "quadrature head plus geometric tail bound"
                              : "head quadrature hit the interval cap";
    return out;
}

// Sampled-trajectory variant for function-space orbits: quadrature over
// [0, t_max] on the supplied evaluator, tail estimated from the fitted
// exponential slope of the last decade.  No claim is made when the tail
// refuses to decay.
struct DatkoFunResult {
    bool finite = false;
    double value = std::numeric_limits<double>::infinity();
    double head = 0.0;
    double tail = 0.0;
    std::string note;
};

template <class F>
DatkoFunResult datko_integral_sampled(const F& traj, double beta, double t_max = 1e3) {
    if (beta < 1.0) throw std::invalid_argument("datko_integral_sampled: beta below one");
    DatkoFunResult out;
    const auto head =
        integrate([&](double t) { return std::pow(traj(t), beta); }, 0.0, t_max, 1e-10, 1e-9, 8000);
    out.head = head.value;
    // slope of ln v over the last decade decides the tail
    std::vector<double> ts, lv;
    bool all_zero = true;
    for (int i = 0; i < 12; ++i) {
        const double t = t_max * (0.1 + 0.9 * double(i) / 11.0);
        const double v = traj(t);
        ts.push_back(t);
        lv.push_back(v > 0.0 ? std::log(v) : -700.0);
        all_zero = all_zero && v <= 1e-250;
    }
    if (all_zero) {
        out.finite = true;
        out.value = out.head;
        out.note = "trajectory annihilated before t_max";
        return out;
    }
    const LinFit f = linear_fit(ts, lv);
    if (f.slope >= -1e-12) {
        out.note = "tail slope not negative: integral not controlled beyond t_max";
        return out;
    }
    const double v_end = std::exp(std::min(f.intercept + f.slope * t_max, 700.0));
    out.tail = std::pow(v_end, beta) / (beta * std::fabs(f.slope));
    out.value = out.head + out.tail;
    out.finite = true;
    out.note = "quadrature head plus fitted exponential tail";
    return out;
}

// ---------------------------------------------------------------------------
// Same-seminorm integral bound: per working seminorm q the ratio
//     N = sup_x int_0^inf q(T(t)x)^beta dt / q(x)^beta
// over the declared probes.  A finite N that stays level across the top
// seminorms certifies the pseudo-uniform rate omega = 1/(2 N beta); an N that
// climbs through an unbounded ladder rejects the uniform constant.  The
// replay check verifies rate + omega < 0 against the exact trajectory rate
// of the same seminorm.
// ---------------------------------------------------------------------------
struct SameSeminormLevel {
    std::string label;
    bool finite = false;
    double n_hat = 0.0;
    double omega = 0.0;
    double rate = 0.0;      // exact binding rate of the probes at this seminorm
    bool replay_ok = false; // rate + omega < 0
    std::string worst_probe;
};

struct SameSeminormReport {
    double beta = 1.0;
    bool finite_all = false;
    bool uniform = false;  // constants do not climb through the top seminorms
    double n_uniform = 0.0;
    double omega = 0.0;  // 1/(2 n_uniform beta) when uniform
    std::vector<SameSeminormLevel> levels;
    std::string note;

    json to_json() const {
        json rows = json::array();
        for (const auto& l : levels)
            rows.push_back(json{{"seminorm", l.label},
                                {"finite", l.finite},
                                {"n_hat", l.n_hat},
                                {"omega", l.omega},
                                {"rate", l.rate},
                                {"replay_ok", l.replay_ok},
                                {"worst_probe", l.worst_probe}});
        return json{{"beta", beta},         {"finite_all", finite_all}, {"uniform", uniform},
                    {"n_uniform", n_uniform}, {"omega", omega},          {"levels", rows},
                    {"note", note}};
    }
};

inline SameSeminormReport datko_same_seminorm(const std::vector<DiagSem>& sems,
                                              const std::vector<DiagTarget>& targets,
                                              const ExponentSequence& E, std::size_t J,
                                              double beta, bool levels_unbounded,
                                              double t_max = 1e3) {
    SameSeminormReport rep;
    rep.beta = beta;
    rep.finite_all = true;
    for (const auto& sem : sems) {
        SameSeminormLevel lv;
        lv.label = sem.label;
        lv.finite = true;
        lv.rate = -std::numeric_limits<double>::infinity();
        bool any = false;
        for (const auto& tgt : targets) {
            if (tgt.is_set) continue;
            const DiagSeries s = build_diag_series(sem, tgt, E, J);
            if (s.empty()) continue;
            const double q0 = s.value(0.0);
            const DatkoResult d = datko_integral(s, beta, t_max);
            any = true;
            lv.rate = std::max(lv.rate, s.rate);
            if (!d.finite) {
                lv.finite = false;
                lv.worst_probe = tgt.name;
                break;
            }
            const double n = d.value / std::pow(q0, beta);
            if (n > lv.n_hat) {
                lv.n_hat = n;
                lv.worst_probe = tgt.name;
            }
        }
        if (!any) {
            lv.finite = true;  // seminorm never sees a probe: vacuously bounded
            lv.n_hat = 0.0;
        }
        if (lv.finite && lv.n_hat > 0.0) {
            lv.omega = 1.0 / (2.0 * lv.n_hat * beta);
            lv.replay_ok = lv.rate + lv.omega < 0.0;
        }
        rep.finite_all = rep.finite_all && lv.finite;
        rep.levels.push_back(std::move(lv));
    }
    if (!rep.finite_all) {
        rep.note = "a probe integral diverges: no same-seminorm bound";
        return rep;
    }
    // drift test across the top three seminorms of an unbounded ladder
    bool drifts = false;
    const std::size_t n = rep.levels.size();
    if (levels_unbounded && n >= 3) {
        auto up = [](double lo, double hi) { return hi > lo * (1.0 + 1e-6); };
        drifts = up(rep.levels[n - 3].n_hat, rep.levels[n - 2].n_hat) &&
                 up(rep.levels[n - 2].n_hat, rep.levels[n - 1].n_hat);
    }
    rep.uniform = !drifts;
    if (rep.uniform) {
        for (const auto& l : rep.levels) rep.n_uniform = std::max(rep.n_uniform, l.n_hat);
        if (rep.n_uniform > 0.0) rep.omega = 1.0 / (2.0 * rep.n_uniform * beta);
        rep.note = "uniform bound across the declared seminorms";
    } else {
        rep.note = "bound climbs through the top seminorms: uniform constant rejected";
    }
    return rep;
}

}  // namespace semistab
