#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "semistab/truncation.hpp"

namespace semistab {

using Complex = std::complex<double>;
using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Koethe matrix: weights a(j,k) > 0 nondecreasing in the level k.  Indices j
// and levels k are 1-based throughout.
// ---------------------------------------------------------------------------
struct KotheMatrix {
    std::string name;
    std::function<double(std::size_t j, int k)> weight;
    TruncationProfile default_truncation{};

    double operator()(std::size_t j, int k) const { return weight(j, k); }
};

// Ratio with the conventions 0/0 := 0 and x/0 := +inf for x > 0.
inline double weight_ratio(double num, double den) {
    if (den > 0.0) return num / den;
    if (num == 0.0) return 0.0;
    return std::numeric_limits<double>::infinity();
}

// Pair index <-> flat index along anti-diagonals: j <-> (p, r), p, r >= 1.
// Diagonal d holds the pairs with p + r = d + 1.
inline std::pair<std::size_t, std::size_t> pair_decode(std::size_t j) {
    std::size_t d = static_cast<std::size_t>(
        std::ceil((std::sqrt(8.0 * double(j) + 1.0) - 1.0) / 2.0));
    while (d * (d + 1) / 2 < j) ++d;
    while (d > 1 && (d - 1) * d / 2 >= j) --d;
    const std::size_t i = j - d * (d - 1) / 2;  // 1..d
    return {i, d + 1 - i};
}

inline std::size_t pair_encode(std::size_t p, std::size_t r) {
    const std::size_t d = p + r - 1;
    return d * (d - 1) / 2 + p;
}

// Built-in matrices.
//   "s"        a(j,k) = j^k                    (rapidly decreasing sequences)
//   "cn"       a(j,k) = 1 for j <= k, else 0   (pointwise convergence on C^N)
//   "constant" a(j,k) = 1                      (plain c0 with sup norm)
//   "m-not-s"  pair-indexed matrix satisfying (M) but not (S); see below
//
// m-not-s: with j <-> (p, r) and beta(p) = 1 + ln(1+p)/10,
//   a(j,k) = beta(p)^{min(k,p)} * (r+1)^{max(0,k-p)}.
// For every k < m the pairs with p >= m keep a(j,k)/a(j,m) = beta(p)^{k-m}
// pinned above beta(p_max)^{k-m} > 0, so no pairing level works for (S);
// along any infinite index set the members with small p and large r drive
// inf a(j,n)/a(j,k) to zero for k slightly above n, which gives (M).  The
// slow beta keeps the stagnant ratios visibly above checker tolerance at
// desk truncations.
inline KotheMatrix builtin_matrix(const std::string& name) {
    KotheMatrix A;
    A.name = name;
    A.default_truncation = default_sequence_profile();
    if (name == "s") {
        A.weight = [](std::size_t j, int k) { return std::pow(double(j), double(k)); };
    } else if (name == "cn") {
        A.weight = [](std::size_t j, int k) {
            return j <= static_cast<std::size_t>(k) ? 1.0 : 0.0;
        };
    } else if (name == "constant") {
        A.weight = [](std::size_t, int) { return 1.0; };
    } else if (name == "m-not-s") {
        A.weight = [](std::size_t j, int k) {
            const auto [p, r] = pair_decode(j);
            const double beta = 1.0 + std::log1p(double(p)) / 10.0;
            const double kk = double(k);
            const double pp = double(p);
            return std::pow(beta, std::min(kk, pp)) *
                   std::pow(double(r + 1), std::max(0.0, kk - pp));
        };
    } else {
        throw std::invalid_argument("unknown matrix name: " + name);
    }
    return A;
}

// Construction-time sanity: level-monotone up to k_max, eventually positive
// at truncation.  Positivity may only show up at levels beyond k_max (the
// pointwise matrix needs k = j), so that search runs further out.
inline void validate_matrix(const KotheMatrix& A, std::size_t J, int k_max) {
    const int k_pos = static_cast<int>(std::max<std::size_t>(J, std::size_t(k_max)));
    for (std::size_t j = 1; j <= J; ++j) {
        bool positive = false;
        double prev = -1.0;
        for (int k = 1; k <= k_max; ++k) {
            const double a = A(j, k);
            if (a < 0.0) throw std::invalid_argument("negative weight in matrix " + A.name);
            if (a < prev * (1.0 - 1e-12))
                throw std::invalid_argument("weights not monotone in level in matrix " + A.name);
            prev = a;
            positive = positive || a > 0.0;
        }
        for (int k = k_max + 1; k <= k_pos && !positive; ++k) positive = A(j, k) > 0.0;
        if (!positive)
            throw std::invalid_argument("weights vanish at all levels for some index in matrix " +
                                        A.name);
    }
}

// ---------------------------------------------------------------------------
// Truncated sequence vectors: sparse (index, value) entries, 1-based indices.
// ---------------------------------------------------------------------------
struct SeqVector {
    std::vector<std::pair<std::size_t, Complex>> entries;  // sorted by index

    static SeqVector zero() { return {}; }

    static SeqVector basis(std::size_t j, Complex v = 1.0) {
        SeqVector x;
        x.entries.emplace_back(j, v);
        return x;
    }

    template <class F>
    static SeqVector from_generator(const F& f, std::size_t J) {
        SeqVector x;
        x.entries.reserve(J);
        for (std::size_t j = 1; j <= J; ++j) {
            const Complex v = f(j);
            if (v != Complex(0.0)) x.entries.emplace_back(j, v);
        }
        return x;
    }

    Complex at(std::size_t j) const {
        auto it = std::lower_bound(entries.begin(), entries.end(), j,
                                   [](const auto& e, std::size_t idx) { return e.first < idx; });
        return (it != entries.end() && it->first == j) ? it->second : Complex(0.0);
    }

    void set(std::size_t j, Complex v) {
        auto it = std::lower_bound(entries.begin(), entries.end(), j,
                                   [](const auto& e, std::size_t idx) { return e.first < idx; });
        if (it != entries.end() && it->first == j) {
            it->second = v;
        } else {
            entries.insert(it, {j, v});
        }
    }

    SeqVector scaled(Complex c) const {
        SeqVector y = *this;
        for (auto& e : y.entries) e.second *= c;
        return y;
    }

    friend SeqVector operator+(const SeqVector& a, const SeqVector& b) {
        SeqVector y;
        auto ia = a.entries.begin();
        auto ib = b.entries.begin();
        while (ia != a.entries.end() || ib != b.entries.end()) {
            if (ib == b.entries.end() || (ia != a.entries.end() && ia->first < ib->first)) {
                y.entries.push_back(*ia++);
            } else if (ia == a.entries.end() || ib->first < ia->first) {
                y.entries.push_back(*ib++);
            } else {
                y.entries.emplace_back(ia->first, ia->second + ib->second);
                ++ia;
                ++ib;
            }
        }
        return y;
    }

    bool nonzero_below(std::size_t J) const {
        for (const auto& [j, v] : entries)
            if (j <= J && v != Complex(0.0)) return true;
        return false;
    }
};

// ---------------------------------------------------------------------------
// Weighted sup seminorm ||x||_k = max_{j<=J} a(j,k)|x_j|.
// ---------------------------------------------------------------------------
inline double seminorm_eval(const KotheMatrix& A, int k, const SeqVector& x, std::size_t J = 0) {
    if (J == 0) J = A.default_truncation.index_count;
    double sup = 0.0;
    for (const auto& [j, v] : x.entries) {
        if (j > J) continue;
        sup = std::max(sup, A(j, k) * std::abs(v));
    }
    if (sup == 0.0 && x.nonzero_below(J)) {
        bool row_positive = false;
        for (std::size_t j = 1; j <= J && !row_positive; ++j) row_positive = A(j, k) > 0.0;
        if (!row_positive) throw std::domain_error("seminorm degenerate at truncation");
    }
    return sup;
}

// ---------------------------------------------------------------------------
// Condition (S): for each level k some m with a(j,k)/a(j,m) -> 0.
// Desk rule (tail window = last 25% of indices): a pairing level m is
// accepted when the window ratios are finite, nonincreasing, and either all
// below tol or clearly decaying (end <= 0.8 * start and end < 0.1).  The
// decay clause keeps slow tails like 1/j certifiable at their natural m.
// ---------------------------------------------------------------------------
struct LevelPairing {
    int k = 0;
    bool holds = false;
    int m = 0;           // smallest accepted pairing level when holds
    double tail_max = 0; // max window ratio at the accepted (or last tried) m
};

struct ConditionSReport {
    std::vector<LevelPairing> levels;
    bool holds = false;
    std::size_t truncation = 0;
    double tol = 0.0;
};

namespace detail {

inline bool window_nonincreasing(const std::vector<double>& w) {
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] > w[i - 1] * (1.0 + 1e-9) + 1e-300) return false;
    return true;
}

inline bool tail_window_vanishes(const std::vector<double>& w, double tol) {
    if (w.empty()) return false;
    for (double v : w)
        if (std::isinf(v)) return false;
    if (!window_nonincreasing(w)) return false;
    const double wmax = *std::max_element(w.begin(), w.end());
    if (wmax < tol) return true;
    return w.back() <= 0.8 * w.front() && w.back() < 0.1;
}

}  // namespace detail

inline ConditionSReport check_condition_S(const KotheMatrix& A, int k_max, int m_max,
                                          std::size_t J = 0, double tol = 1e-3) {
    if (J == 0) J = A.default_truncation.index_count;
    if (k_max > m_max) throw std::invalid_argument("check_condition_S: k_max exceeds m_max");
    ConditionSReport rep;
    rep.truncation = J;
    rep.tol = tol;
    rep.holds = true;
    const std::size_t w_begin = J - std::max<std::size_t>(std::size_t(double(J) * 0.25), 2) + 1;
    for (int k = 1; k <= k_max; ++k) {
        LevelPairing lp;
        lp.k = k;
        for (int m = 1; m <= m_max && !lp.holds; ++m) {
            std::vector<double> window;
            window.reserve(J - w_begin + 1);
            for (std::size_t j = w_begin; j <= J; ++j)
                window.push_back(weight_ratio(A(j, k), A(j, m)));
            double wmax = 0.0;
            for (double v : window) wmax = std::max(wmax, v);
            lp.tail_max = wmax;
            if (detail::tail_window_vanishes(window, tol)) {
                lp.holds = true;
                lp.m = m;
            }
        }
        rep.holds = rep.holds && lp.holds;
        rep.levels.push_back(lp);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Condition (M): for every infinite index subset I and level n some k with
// inf_{j in I} a(j,n)/a(j,k) = 0.  Infinite subsets are represented by a
// finite surrogate family; each is intersected with [1, J].
// ---------------------------------------------------------------------------
struct IndexSubset {
    std::string label;
    std::function<bool(std::size_t j)> member;
};

inline std::vector<IndexSubset> default_subset_family() {
    std::vector<IndexSubset> fam;
    fam.push_back({"all", [](std::size_t) { return true; }});
    for (std::size_t step = 2; step <= 5; ++step) {
        for (std::size_t offset = 1; offset <= step; ++offset) {
            fam.push_back({"ap-" + std::to_string(step) + "-" + std::to_string(offset),
                           [step, offset](std::size_t j) { return j % step == offset % step; }});
        }
    }
    return fam;
}

struct SubsetVerdict {
    std::string subset;
    int n = 0;
    bool holds = false;
    bool vacuous = false;  // empty after truncation: does not count against the verdict
    int k = 0;             // smallest level with vanishing infimum when holds
    double inf_value = std::numeric_limits<double>::infinity();
};

struct ConditionMReport {
    std::vector<SubsetVerdict> rows;
    bool holds = false;
    std::size_t truncation = 0;
    double tol = 0.0;
};

inline ConditionMReport check_condition_M(const KotheMatrix& A,
                                          const std::vector<IndexSubset>& subsets, int n_max,
                                          int k_max, std::size_t J = 0, double tol = 1e-3) {
    if (J == 0) J = A.default_truncation.index_count;
    ConditionMReport rep;
    rep.truncation = J;
    rep.tol = tol;
    rep.holds = true;
    for (const auto& sub : subsets) {
        std::vector<std::size_t> idx;
        for (std::size_t j = 1; j <= J; ++j)
            if (sub.member(j)) idx.push_back(j);
        for (int n = 1; n <= n_max; ++n) {
            SubsetVerdict row;
            row.subset = sub.label;
            row.n = n;
            if (idx.empty()) {
                row.vacuous = true;  // subset vacuous at truncation
                rep.rows.push_back(row);
                continue;
            }
            for (int k = 1; k <= k_max && !row.holds; ++k) {
                double inf = std::numeric_limits<double>::infinity();
                for (std::size_t j : idx) inf = std::min(inf, weight_ratio(A(j, n), A(j, k)));
                if (inf < row.inf_value) {
                    row.inf_value = inf;
                    row.k = k;
                }
                if (inf < tol) {
                    row.holds = true;
                    row.k = k;
                    row.inf_value = inf;
                }
            }
            rep.holds = rep.holds && row.holds;
            rep.rows.push_back(row);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Serialization: {"matrix": name-or-inline-table, "truncation": J}.
// Inline tables are row-major, table[j-1][k-1].
// ---------------------------------------------------------------------------
inline json matrix_to_json(const KotheMatrix& A) {
    json doc;
    doc["matrix"] = A.name;
    doc["truncation"] = A.default_truncation.index_count;
    return doc;
}

inline KotheMatrix matrix_from_json(const json& doc) {
    if (!doc.contains("matrix")) throw std::invalid_argument("matrix: missing field");
    const auto& m = doc.at("matrix");
    KotheMatrix A;
    if (m.is_string()) {
        A = builtin_matrix(m.get<std::string>());
    } else if (m.is_array()) {
        auto table = std::make_shared<std::vector<std::vector<double>>>(
            m.get<std::vector<std::vector<double>>>());
        if (table->empty()) throw std::invalid_argument("matrix: empty inline table");
        A.name = "inline";
        A.weight = [table](std::size_t j, int k) -> double {
            if (j > table->size()) throw std::out_of_range("matrix: index beyond inline table");
            const auto& row = (*table)[j - 1];
            if (k < 1 || static_cast<std::size_t>(k) > row.size())
                throw std::out_of_range("matrix: level beyond inline table");
            return row[static_cast<std::size_t>(k - 1)];
        };
        A.default_truncation = default_sequence_profile();
        A.default_truncation.index_count = table->size();
    } else {
        throw std::invalid_argument("matrix: expected name or inline table");
    }
    if (doc.contains("truncation"))
        A.default_truncation.index_count = doc.at("truncation").get<std::size_t>();
    return A;
}

inline json vector_to_json(const SeqVector& x) {
    json doc;
    json entries = json::array();
    for (const auto& [j, v] : x.entries)
        entries.push_back(json::array({j, v.real(), v.imag()}));
    doc["entries"] = entries;
    return doc;
}

inline SeqVector vector_from_json(const json& doc) {
    SeqVector x;
    for (const auto& e : doc.at("entries")) {
        const std::size_t j = e.at(0).get<std::size_t>();
        x.set(j, Complex(e.at(1).get<double>(), e.size() > 2 ? e.at(2).get<double>() : 0.0));
    }
    return x;
}

}  // namespace semistab
