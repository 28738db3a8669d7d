#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <semistab/functions.hpp>
#include <semistab/quadrature.hpp>
#include <semistab/seminorms.hpp>

namespace semistab {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// A multiplier / transport coefficient q: R -> R with the metadata the
// evaluators rely on: exact antiderivative where available, derivatives up
// to third order, declared sup bounds, and shape flags.
// ---------------------------------------------------------------------------
struct ScalarField {
    std::string name;
    std::function<double(double)> q;
    std::function<double(double)> antider;      // exact antiderivative; empty -> quadrature
    std::function<double(int, double)> deriv;   // orders 1..3
    std::array<double, 4> sup_abs{0.0, 0.0, 0.0, 0.0};  // declared sup |q^(m)|
    bool nonpositive = false;
    bool increasing_to_zero_right = false;  // eventually monotone increasing with limit 0
};

inline double field_deriv(const ScalarField& F, int m, double x) {
    if (m == 0) return F.q(x);
    if (m < 1 || m > 3) throw std::invalid_argument("field_deriv: order out of range");
    if (F.deriv) return F.deriv(m, x);
    // central differences over the raw coefficient
    GridFunction g;
    g.value_fn = F.q;
    return g.central_difference(m, x);
}

// integral of q over [x, x+t]
inline double field_window(const ScalarField& F, double x, double t) {
    if (t == 0.0) return 0.0;
    if (F.antider) return F.antider(x + t) - F.antider(x);
    auto r = integrate(F.q, x, x + t, 1e-12, 1e-12);
    if (!r.converged)
        throw std::runtime_error("field_window: quadrature did not converge for " + F.name);
    return r.value;
}

// Sample the declared bounds and sign flags; throws on violation.
inline void validate_scalar_field(const ScalarField& F, double lo = -50.0, double hi = 50.0,
                                  std::size_t samples = 4001) {
    double h = (hi - lo) / double(samples - 1);
    for (std::size_t i = 0; i < samples; ++i) {
        double x = lo + double(i) * h;
        double v = F.q(x);
        if (std::fabs(v) > F.sup_abs[0] + 1e-9)
            throw std::runtime_error("validate_scalar_field: |q| exceeds declared bound");
        if (F.nonpositive && v > 1e-12)
            throw std::runtime_error("validate_scalar_field: q is not nonpositive");
        for (int m = 1; m <= 3; ++m) {
            if (!F.deriv) break;
            if (std::fabs(F.deriv(m, x)) > F.sup_abs[std::size_t(m)] + 1e-9)
                throw std::runtime_error("validate_scalar_field: derivative exceeds declared bound");
        }
    }
}

// ---------------------------------------------------------------------------
// Field presets.
// ---------------------------------------------------------------------------

inline ScalarField field_sin_minus_1() {
    ScalarField F;
    F.name = "sin(x)-1";
    F.q = [](double x) { return std::sin(x) - 1.0; };
    F.antider = [](double x) { return -std::cos(x) - x; };
    F.deriv = [](int m, double x) {
        switch (m) {
            case 1: return std::cos(x);
            case 2: return -std::sin(x);
            case 3: return -std::cos(x);
            default: throw std::invalid_argument("order out of range");
        }
    };
    F.sup_abs = {2.0, 1.0, 1.0, 1.0};
    F.nonpositive = true;
    return F;
}

inline ScalarField field_neg_inv_one_plus_x2() {
    ScalarField F;
    F.name = "-1/(1+x^2)";
    F.q = [](double x) { return -1.0 / (1.0 + x * x); };
    F.antider = [](double x) { return -std::atan(x); };
    F.deriv = [](int m, double x) {
        double s = 1.0 + x * x;
        switch (m) {
            case 1: return 2.0 * x / (s * s);
            case 2: return (2.0 - 6.0 * x * x) / (s * s * s);
            case 3: return (24.0 * x * x * x - 24.0 * x) / (s * s * s * s);
            default: throw std::invalid_argument("order out of range");
        }
    };
    F.sup_abs = {1.0, 0.65, 2.0, 6.0};
    F.nonpositive = true;
    F.increasing_to_zero_right = true;
    return F;
}

inline ScalarField field_constant(double v) {
    ScalarField F;
    F.name = "constant";
    F.q = [v](double) { return v; };
    F.antider = [v](double x) { return v * x; };
    F.deriv = [](int, double) { return 0.0; };
    F.sup_abs = {std::fabs(v), 0.0, 0.0, 0.0};
    F.nonpositive = v <= 0.0;
    return F;
}

// -1/|x| for |x| >= 1, matched C^2 by an even quartic on [-1, 1]:
// q(x) = -(15/8 - (5/4) x^2 + (3/8) x^4).
inline ScalarField field_interp_neg_inv_abs() {
    ScalarField F;
    F.name = "-1/|x| (interpolated)";
    F.q = [](double x) {
        double a = std::fabs(x);
        if (a >= 1.0) return -1.0 / a;
        double x2 = x * x;
        return -(15.0 / 8.0 - 1.25 * x2 + 0.375 * x2 * x2);
    };
    F.antider = [](double x) {
        double a = std::fabs(x);
        if (a >= 1.0) {
            double core = -23.0 / 15.0 - std::log(a);
            return x > 0.0 ? core : -core;
        }
        double x2 = x * x;
        return -x * (15.0 / 8.0 - (5.0 / 12.0) * x2 + 0.075 * x2 * x2);
    };
    F.deriv = [](int m, double x) {
        double a = std::fabs(x);
        if (a >= 1.0) {
            double s = x > 0.0 ? 1.0 : -1.0;
            switch (m) {
                case 1: return s / (a * a);
                case 2: return -2.0 / (s * a * a * a);
                case 3: return 6.0 * s / (a * a * a * a);
            }
        } else {
            switch (m) {
                case 1: return 2.5 * x - 1.5 * x * x * x;
                case 2: return 2.5 - 4.5 * x * x;
                case 3: return -9.0 * x;
            }
        }
        throw std::invalid_argument("order out of range");
    };
    F.sup_abs = {15.0 / 8.0, 1.3, 2.5, 9.0};
    F.nonpositive = true;
    F.increasing_to_zero_right = true;
    return F;
}

// ---------------------------------------------------------------------------
// Semigroup actions.  All return the evolved state as a GridFunction; each
// application starts from the original member, so closure depth stays flat.
// ---------------------------------------------------------------------------

// Right shift: [T(t)f](s) = f(s - t), continued by zero through f's own
// domain mask.  Works unchanged on the full line and on half-line domains.
inline GridFunction shift_apply(double t, const GridFunction& f) {
    if (t < 0.0) throw std::invalid_argument("shift_apply: need t >= 0");
    GridFunction g = f;
    g.tag = "shifted(" + f.tag + ")";
    GridFunction base = f;
    g.value_fn = [base, t](double s) { return base(s - t); };
    if (f.deriv_fn)
        g.deriv_fn = [base, t](int n, double s) { return base.derivative(n, s - t); };
    if (f.compact_support) {
        g.support_lo = std::max(f.support_lo + t, g.domain_lo);
        g.support_hi = std::min(f.support_hi + t, g.domain_hi);
    }
    return g;
}

// Weighted left translation: [T(t)f](x) = exp(int_x^{x+t} q) f(x + t).
inline GridFunction transport_apply(const ScalarField& F, double t, const GridFunction& f) {
    if (t < 0.0) throw std::invalid_argument("transport_apply: need t >= 0");
    GridFunction g;
    g.tag = "transport(" + f.tag + ")";
    g.domain_lo = f.domain_lo;
    g.domain_hi = f.domain_hi;
    GridFunction base = f;
    ScalarField Q = F;
    g.value_fn = [base, Q, t](double x) {
        double fv = base(x + t);
        if (fv == 0.0) return 0.0;
        return std::exp(field_window(Q, x, t)) * fv;
    };
    if (Q.deriv && (f.deriv_fn || f.max_deriv_order >= 3)) {
        g.deriv_fn = [base, Q, t](int n, double x) {
            double E = std::exp(field_window(Q, x, t));
            double d0 = Q.q(x + t) - Q.q(x);
            double d1 = Q.deriv(1, x + t) - Q.deriv(1, x);
            double d2 = Q.deriv(2, x + t) - Q.deriv(2, x);
            double E1 = d0 * E;
            double E2 = (d1 + d0 * d0) * E;
            double E3 = (d2 + 3.0 * d0 * d1 + d0 * d0 * d0) * E;
            double f0 = base(x + t);
            double f1 = base.derivative(1, x + t);
            double f2 = n >= 2 ? base.derivative(2, x + t) : 0.0;
            double f3 = n >= 3 ? base.derivative(3, x + t) : 0.0;
            switch (n) {
                case 1: return E1 * f0 + E * f1;
                case 2: return E2 * f0 + 2.0 * E1 * f1 + E * f2;
                case 3: return E3 * f0 + 3.0 * E2 * f1 + 3.0 * E1 * f2 + E * f3;
                default: throw std::invalid_argument("order out of range");
            }
        };
        g.analytic_derivs = f.analytic_derivs;
    }
    if (f.compact_support) {
        g.compact_support = true;
        g.support_lo = f.support_lo - t;
        g.support_hi = f.support_hi - t;
    }
    return g;
}

// Multiplication semigroup: [T(t)f](x) = e^{q(x) t} f(x).
inline GridFunction mult_apply(const ScalarField& F, double t, const GridFunction& f) {
    if (t < 0.0) throw std::invalid_argument("mult_apply: need t >= 0");
    GridFunction g;
    g.tag = "mult(" + f.tag + ")";
    g.domain_lo = f.domain_lo;
    g.domain_hi = f.domain_hi;
    g.compact_support = f.compact_support;
    g.support_lo = f.support_lo;
    g.support_hi = f.support_hi;
    GridFunction base = f;
    ScalarField Q = F;
    g.value_fn = [base, Q, t](double x) {
        double fv = base(x);
        if (fv == 0.0) return 0.0;
        return std::exp(t * Q.q(x)) * fv;
    };
    if (Q.deriv && (f.deriv_fn || f.max_deriv_order >= 3)) {
        g.deriv_fn = [base, Q, t](int n, double x) {
            double E = std::exp(t * Q.q(x));
            double q1 = Q.deriv(1, x), q2 = Q.deriv(2, x), q3 = Q.deriv(3, x);
            double E1 = t * q1 * E;
            double E2 = (t * q2 + t * t * q1 * q1) * E;
            double E3 = (t * q3 + 3.0 * t * t * q1 * q2 + t * t * t * q1 * q1 * q1) * E;
            double f0 = base(x);
            double f1 = base.derivative(1, x);
            double f2 = n >= 2 ? base.derivative(2, x) : 0.0;
            double f3 = n >= 3 ? base.derivative(3, x) : 0.0;
            switch (n) {
                case 1: return E1 * f0 + E * f1;
                case 2: return E2 * f0 + 2.0 * E1 * f1 + E * f2;
                case 3: return E3 * f0 + 3.0 * E2 * f1 + 3.0 * E1 * f2 + E * f3;
                default: throw std::invalid_argument("order out of range");
            }
        };
        g.analytic_derivs = f.analytic_derivs;
    }
    return g;
}

// ---------------------------------------------------------------------------
// mu_q(t) = sup_x int_x^{x+t} q: grid scan + local polish.  When the sup is
// attained only in the limit x -> +inf the result carries the flag, and the
// declared shape flags pin the limiting value exactly.
// ---------------------------------------------------------------------------
struct MuResult {
    double value = 0.0;
    bool sup_not_localized = false;
    std::string note;
};

inline MuResult mu_q(const ScalarField& F, double t, double search_radius = 60.0,
                     double tol = 1e-6) {
    if (t < 0.0) throw std::invalid_argument("mu_q: need t >= 0");
    if (t == 0.0) return {0.0, false, {}};
    auto W = [&](double x) { return field_window(F, x, t); };

    double R = search_radius;
    std::size_t n = 481;
    double best = -std::numeric_limits<double>::infinity();
    double bx = 0.0, h = 0.0;
    for (int pass = 0; pass < 2; ++pass) {
        h = 2.0 * R / double(n - 1);
        for (std::size_t i = 0; i < n; ++i) {
            double x = -R + double(i) * h;
            double v = W(x);
            if (v > best) {
                best = v;
                bx = x;
            }
        }
        n = 4 * (n - 1) + 1;
    }
    // ternary polish inside the discovered basin
    double lo = bx - h, hi = bx + h;
    for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + std::fabs(bx)); ++it) {
        double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (W(m1) < W(m2))
            lo = m1;
        else
            hi = m2;
    }
    best = std::max(best, W(0.5 * (lo + hi)));

    // boundary drift: the argmax sits at the window edge and the edge still rises
    bool drift = false;
    if (bx >= R - 2.0 * h)
        drift = W(R) > W(R - 4.0 * h) + 1e-12;
    else if (bx <= -R + 2.0 * h)
        drift = W(-R) > W(-R + 4.0 * h) + 1e-12;
    if (drift) {
        if (F.nonpositive && F.increasing_to_zero_right)
            return {0.0, true, "sup not localized: attained only in the limit x -> +inf"};
        return {best, true, "sup not localized: window max still increasing at the boundary"};
    }
    (void)tol;
    return {best, false, {}};
}

struct MuRate {
    double rate = 0.0;
    bool sup_not_localized = false;
};

// min over the last decade of |mu_q(t)| / t; > 0 certifies exponential decay
// of the transport factor.
inline MuRate mu_rate(const ScalarField& F, double t_max = 500.0, std::size_t samples = 16) {
    MuRate out;
    out.rate = std::numeric_limits<double>::infinity();
    double lo = t_max / 10.0;
    for (std::size_t i = 0; i < samples; ++i) {
        double t = lo + (t_max - lo) * double(i) / double(samples - 1);
        MuResult m = mu_q(F, t);
        out.sup_not_localized = out.sup_not_localized || m.sup_not_localized;
        out.rate = std::min(out.rate, std::fabs(m.value) / t);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Schwartz-type seminorm max_{k,n <= N} sup_x |x^k f^(n)(x)| by grid scan.
// ---------------------------------------------------------------------------
struct SchwartzEval {
    double value = 0.0;
    bool radius_too_small = false;
};

inline SchwartzEval schwartz_seminorm(const GridFunction& f, int N, double radius = 20.0,
                                      std::size_t points = 4097) {
    if (N < 0 || N > f.max_deriv_order)
        throw std::invalid_argument("schwartz_seminorm: order out of range for " + f.tag);
    if (f.identically_zero()) return {0.0, false};
    double lo = -radius, hi = radius;
    if (f.compact_support) {
        lo = std::max(lo, f.support_lo);
        hi = std::min(hi, f.support_hi);
        if (lo >= hi) return {0.0, false};
    }
    double best = 0.0, boundary = 0.0;
    double h = (hi - lo) / double(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        double x = lo + double(i) * h;
        for (int n = 0; n <= N; ++n) {
            double d = std::fabs(f.derivative(n, x));
            if (d == 0.0) continue;
            double xp = 1.0;
            for (int k = 0; k <= N; ++k) {
                double v = std::fabs(xp) * d;
                best = std::max(best, v);
                if (i == 0 || i + 1 == points) boundary = std::max(boundary, v);
                xp *= x;
            }
        }
    }
    bool flag = !f.compact_support && boundary > 1e-9 * std::max(best, 1e-12);
    return {best, flag};
}

// ---------------------------------------------------------------------------
// Heat-type semigroup carried on the Fourier side: the state is a profile
// fhat with constant exponent q; T(t) only advances applied_time, and the
// multiplier e^{q t - x^2 t} enters modulus-wise at evaluation.
// ---------------------------------------------------------------------------
struct FourierProfile {
    GridFunction fhat;
    Complex q{0.0, 0.0};
    double applied_time = 0.0;
};

inline FourierProfile heat_apply_fourier(FourierProfile p, double t) {
    if (t < 0.0) throw std::invalid_argument("heat_apply_fourier: need t >= 0");
    p.applied_time += t;
    return p;
}

inline double heat_multiplier(Complex q, double t, double x) {
    return std::exp(q.real() * t - x * x * t);
}

struct SobolevEval {
    double value = 0.0;
    bool radius_too_small = false;
    bool converged = true;
};

// |p|_n = sqrt( int (1+x^2)^n |e^{q tau - x^2 tau} fhat(x)|^2 dx )
inline SobolevEval sobolev_fourier_seminorm(const FourierProfile& p, int n, double radius = 20.0,
                                            double abs_tol = 1e-13) {
    const GridFunction& f = p.fhat;
    if (f.identically_zero()) return {0.0, false, true};
    double lo = -radius, hi = radius;
    if (f.compact_support) {
        lo = std::max(lo, f.support_lo);
        hi = std::min(hi, f.support_hi);
        if (lo >= hi) return {0.0, false, true};
    }
    double tau = p.applied_time;
    double rq = p.q.real();
    auto g = [&](double x) {
        double v = heat_multiplier({rq, 0.0}, tau, x) * f(x);
        double w = std::pow(1.0 + x * x, double(n));
        return w * v * v;
    };
    auto qr = integrate(g, lo, hi, abs_tol, 1e-11);
    SobolevEval out;
    out.value = std::sqrt(std::max(0.0, qr.value));
    out.converged = qr.converged;
    if (!f.compact_support)
        out.radius_too_small = std::max(g(lo), g(hi)) > 1e-12 * (1.0 + qr.value);
    return out;
}

// ---------------------------------------------------------------------------
// Unified seminorm evaluation for function-space states.  SchwartzN and
// WeightedSup windows auto-expand (doubling up to the cap) while the tail
// test flags the boundary.
// ---------------------------------------------------------------------------
struct FunSemEval {
    double value = 0.0;
    bool radius_capped = false;
    double radius_used = 0.0;
};

namespace detail {

inline double grid_sup(const GridFunction& f, double lo, double hi, std::size_t points,
                       const std::function<double(double)>& weight, double* boundary = nullptr) {
    if (lo >= hi) {
        double v = lo == hi ? std::fabs(f(lo)) * (weight ? weight(lo) : 1.0) : 0.0;
        if (boundary) *boundary = v;
        return v;
    }
    double best = 0.0, bnd = 0.0;
    double h = (hi - lo) / double(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        double x = lo + double(i) * h;
        double v = std::fabs(f(x)) * (weight ? weight(x) : 1.0);
        best = std::max(best, v);
        if (i == 0 || i + 1 == points) bnd = std::max(bnd, v);
    }
    if (boundary) *boundary = bnd;
    return best;
}

}  // namespace detail

inline FunSemEval fun_seminorm(const SeminormTag& tag, const GridFunction& f,
                               double radius = 20.0, double radius_cap = 8192.0,
                               std::size_t points = 4097) {
    FunSemEval out;
    out.radius_used = radius;
    switch (tag.kind) {
        case SeminormTag::Kind::PointEval:
            out.value = std::fabs(f(tag.point));
            return out;
        case SeminormTag::Kind::CompactSup: {
            double lo = std::max(-tag.point, f.domain_lo);
            double hi = std::min(tag.point, f.domain_hi);
            if (f.compact_support) {
                lo = std::max(lo, f.support_lo);
                hi = std::min(hi, f.support_hi);
            }
            if (lo > hi) return out;
            out.value = detail::grid_sup(f, lo, hi, points, nullptr);
            return out;
        }
        case SeminormTag::Kind::WeightedSup: {
            std::string w = tag.weight;
            auto weight = [w](double x) { return weighted_sup_weight(w, x); };
            double nat_lo = f.compact_support ? std::max(f.support_lo, f.domain_lo) : f.domain_lo;
            double nat_hi = f.compact_support ? std::min(f.support_hi, f.domain_hi) : f.domain_hi;
            if (nat_lo > nat_hi) return out;  // annihilated
            for (double R = radius;; R *= 2.0) {
                out.radius_used = R;
                double lo = std::max(-R, nat_lo);
                double hi = std::min(R, nat_hi);
                if (lo > hi) {  // support lies entirely beyond the window
                    if (R * 2.0 > radius_cap) {
                        out.radius_capped = true;
                        return out;
                    }
                    continue;
                }
                double bnd = 0.0;
                out.value = detail::grid_sup(f, lo, hi, points, weight, &bnd);
                bool cut = lo > nat_lo || hi < nat_hi;
                if (!cut || bnd <= 1e-9 * std::max(out.value, 1e-12)) return out;
                if (R * 2.0 > radius_cap) {
                    out.radius_capped = true;
                    return out;
                }
            }
        }
        case SeminormTag::Kind::SchwartzN: {
            for (double R = radius;; R *= 2.0) {
                auto se = schwartz_seminorm(f, tag.level, R, points);
                out.value = se.value;
                out.radius_used = R;
                if (!se.radius_too_small) return out;
                if (R * 2.0 > radius_cap) {
                    out.radius_capped = true;
                    return out;
                }
            }
        }
        case SeminormTag::Kind::SobolevFourier: {
            FourierProfile p;
            p.fhat = f;  // multiplier already baked into the state's values
            auto se = sobolev_fourier_seminorm(p, tag.level, radius);
            out.value = se.value;
            out.radius_capped = se.radius_too_small;
            return out;
        }
        default:
            throw std::invalid_argument("fun_seminorm: sequence-space tag " + tag.label());
    }
}

}  // namespace semistab
