#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "semistab/bounded_sets.hpp"
#include "semistab/kothe.hpp"
#include "semistab/seminorms.hpp"
#include "semistab/seq_semigroup.hpp"

namespace semistab {

// ---------------------------------------------------------------------------
// Working seminorms of a sequence scenario: weights w_j combined either by
// supremum (Koethe levels, sup norm) or by summation (direct-sum family).
// ---------------------------------------------------------------------------
struct DiagSem {
    std::string label;
    bool sum = false;
    std::function<double(std::size_t)> weight;
};

inline std::vector<DiagSem> kothe_seminorms(const KotheMatrix& A, const std::vector<int>& levels) {
    std::vector<DiagSem> sems;
    for (int k : levels) {
        DiagSem s;
        s.label = "k=" + std::to_string(k);
        s.weight = [A, k](std::size_t j) { return A(j, k); };
        sems.push_back(std::move(s));
    }
    return sems;
}

inline std::vector<DiagSem> supnorm_seminorm() {
    DiagSem s;
    s.label = "sup";
    s.weight = [](std::size_t) { return 1.0; };
    return {s};
}

inline std::vector<DiagSem> directsum_seminorms(
    const std::vector<std::string>& weights = {"1", "j", "2^j"}) {
    std::vector<DiagSem> sems;
    for (const auto& w : weights) {
        DiagSem s;
        s.label = "w=" + w;
        s.sum = true;
        s.weight = [w](std::size_t j) { return sum_abs_weight(w, j); };
        sems.push_back(std::move(s));
    }
    return sems;
}

// ---------------------------------------------------------------------------
// Exact seminorm trajectory of one declared target under a diagonal
// semigroup: a finite positive combination of exponentials
//     t -> max_i c_i e^{r_i t}   or   t -> sum_i c_i e^{r_i t}.
// Summation only applies to solid targets; a non-solid family attains its
// envelope one member at a time, so its set trajectory is the member maximum
// even under a summing seminorm.
// ---------------------------------------------------------------------------
struct DiagSeries {
    std::vector<double> c;         // positive coefficients
    std::vector<double> r;         // matching real rates
    std::vector<std::size_t> idx;  // originating sequence index
    bool sum_mode = false;
    double rate = -std::numeric_limits<double>::infinity();  // max over active rates
    std::size_t rate_idx = 0;                                // index attaining it

    bool empty() const { return c.empty(); }

    double value(double t) const {
        double out = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            const double v = c[i] * std::exp(r[i] * t);
            out = sum_mode ? out + v : std::max(out, v);
        }
        return out;
    }

    // sequence index of the largest term at time t (log space survives the
    // huge coefficients a direct-sum weight can produce)
    std::size_t binding_index(double t) const {
        std::size_t best = 0;
        double best_ln = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < c.size(); ++i) {
            const double ln = std::log(c[i]) + r[i] * t;
            if (ln > best_ln) {
                best_ln = ln;
                best = idx[i];
            }
        }
        return best;
    }
};

inline DiagSeries build_diag_series(const DiagSem& sem, const DiagTarget& target,
                                    const ExponentSequence& E, std::size_t J) {
    DiagSeries s;
    s.sum_mode = sem.sum && target.solid;
    for (std::size_t j = 1; j <= J; ++j) {
        const double env = target.envelope(j, J);
        if (env <= 0.0) continue;
        const double c = sem.weight(j) * env;
        if (c <= 0.0) continue;
        s.c.push_back(c);
        s.r.push_back(E(j).real());
        s.idx.push_back(j);
        if (s.r.back() > s.rate) {
            s.rate = s.r.back();
            s.rate_idx = j;
        }
    }
    return s;
}

}  // namespace semistab
