#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <semistab/functions.hpp>
#include <semistab/kothe.hpp>

namespace semistab {

// ---------------------------------------------------------------------------
// Diagonal-side classification targets.  A target is either a probe (one
// point) or a bounded set; both are carried as a coordinate envelope
// c_j >= sup_{x in B} |x_j|, which is exact for points, solid balls, basis
// families and finite lists alike, and is all a diagonal trajectory needs.
// ---------------------------------------------------------------------------
struct DiagTarget {
    std::string name;
    bool is_set = false;
    bool bounded_in_limit = true;  // declared bounded in the untruncated space
    // solid: the envelope is attained coordinatewise-simultaneously (points,
    // solid balls).  Non-solid families (e.g. unit vectors) attain it one
    // member at a time, which matters for summing seminorms.
    bool solid = true;
    // envelope at index j (1-based) when the working truncation is J; 0 = inactive
    std::function<double(std::size_t, std::size_t)> envelope;
    // concrete member used for pointwise diagnostics (probes only)
    std::function<SeqVector(std::size_t)> point;
};

inline DiagTarget diag_probe_basis(std::size_t j0) {
    DiagTarget t;
    t.name = "e" + std::to_string(j0);
    t.envelope = [j0](std::size_t j, std::size_t) { return j == j0 ? 1.0 : 0.0; };
    t.point = [j0](std::size_t) { return SeqVector::basis(j0); };
    return t;
}

inline DiagTarget diag_probe_mix(std::size_t j1 = 1, std::size_t j2 = 7) {
    DiagTarget t;
    t.name = "mix";
    t.envelope = [j1, j2](std::size_t j, std::size_t) {
        return j == j1 ? 1.0 : (j == j2 ? 0.5 : 0.0);
    };
    t.point = [j1, j2](std::size_t) {
        SeqVector x = SeqVector::basis(j1);
        x.set(j2, 0.5);
        return x;
    };
    return t;
}

inline DiagTarget diag_probe_ones() {
    DiagTarget t;
    t.name = "ones";
    t.envelope = [](std::size_t j, std::size_t J) { return j <= J ? 1.0 : 0.0; };
    t.point = [](std::size_t J) {
        return SeqVector::from_generator([](std::size_t) { return Complex{1.0, 0.0}; }, J);
    };
    return t;
}

inline DiagTarget diag_probe_dense_decay() {
    DiagTarget t;
    t.name = "dense-decay";
    t.envelope = [](std::size_t j, std::size_t J) {
        return j <= J ? std::exp(-double(j)) : 0.0;
    };
    t.point = [](std::size_t J) {
        return SeqVector::from_generator(
            [](std::size_t j) { return Complex{std::exp(-double(j)), 0.0}; }, J);
    };
    return t;
}

// {e_j : j <= J}; bounded in the limit only when the space's unit vectors are.
inline DiagTarget diag_set_basis_family(bool bounded_in_limit) {
    DiagTarget t;
    t.name = "basis-family";
    t.is_set = true;
    t.bounded_in_limit = bounded_in_limit;
    t.solid = false;  // one unit vector at a time, never the coordinatewise hull
    t.envelope = [](std::size_t j, std::size_t J) { return j <= J ? 1.0 : 0.0; };
    return t;
}

// Solid ball {x : |x_j| <= env(j)} truncated at J.
inline DiagTarget diag_set_envelope(std::string name, std::function<double(std::size_t)> env,
                                    bool bounded_in_limit = true) {
    DiagTarget t;
    t.name = std::move(name);
    t.is_set = true;
    t.bounded_in_limit = bounded_in_limit;
    t.envelope = [env](std::size_t j, std::size_t J) { return j <= J ? env(j) : 0.0; };
    return t;
}

inline DiagTarget diag_set_finite(std::string name, std::vector<SeqVector> members) {
    DiagTarget t;
    t.name = std::move(name);
    t.is_set = true;
    t.envelope = [members](std::size_t j, std::size_t) {
        double c = 0.0;
        for (const auto& m : members) c = std::max(c, std::abs(m.at(j)));
        return c;
    };
    return t;
}

// Declared-bounded targets must present truncation-stable seminorms: doubling
// the index window may not grow any working seminorm by more than the fixed
// factor, otherwise the declaration is rejected up front.
inline void check_diag_target_admissible(const KotheMatrix& A, const DiagTarget& B,
                                         const std::vector<int>& levels, std::size_t J) {
    if (!B.bounded_in_limit) return;
    for (int k : levels) {
        double qJ = 0.0, q2J = 0.0;
        for (std::size_t j = 1; j <= 2 * J; ++j) {
            double a = A(j, std::size_t(k));
            if (j <= J) qJ = std::max(qJ, a * B.envelope(j, J));
            q2J = std::max(q2J, a * B.envelope(j, 2 * J));
        }
        if (q2J > 10.0 * std::max(qJ, 1e-300))
            throw std::runtime_error("target '" + B.name +
                                     "' is not admissible: seminorm k=" + std::to_string(k) +
                                     " grows unboundedly under truncation doubling");
    }
}

// ---------------------------------------------------------------------------
// Function-side targets.  Each member is carried as its own trajectory
// generator t -> T(t)(member), so shift, transport, multiplication and
// Fourier-side heat states all evaluate through one seminorm path.
// ---------------------------------------------------------------------------
struct FunMember {
    std::string name;
    std::function<GridFunction(double)> at;
};

struct FunTarget {
    std::string name;
    bool is_set = false;
    std::vector<FunMember> fixed;                                 // probes / finite sets
    std::function<std::vector<FunMember>(std::size_t)> family;     // count-parameterized
    std::size_t member_count = 0;
    bool bounded_in_limit = true;
    double support_radius = 0.0;  // > 0: declared common support radius

    std::vector<FunMember> members(std::size_t count) const {
        if (family) return family(count);
        return fixed;
    }
};

inline FunTarget fun_probe(std::string name, std::function<GridFunction(double)> at) {
    FunTarget t;
    t.name = std::move(name);
    t.fixed.push_back({t.name, std::move(at)});
    return t;
}

inline FunTarget fun_set_fixed(std::string name, std::vector<FunMember> members,
                               double support_radius = 0.0) {
    FunTarget t;
    t.name = std::move(name);
    t.is_set = true;
    t.fixed = std::move(members);
    t.member_count = t.fixed.size();
    t.support_radius = support_radius;
    return t;
}

inline FunTarget fun_set_family(std::string name,
                                std::function<std::vector<FunMember>(std::size_t)> family,
                                std::size_t count, double support_radius = 0.0) {
    FunTarget t;
    t.name = std::move(name);
    t.is_set = true;
    t.family = std::move(family);
    t.member_count = count;
    t.support_radius = support_radius;
    return t;
}

}  // namespace semistab
