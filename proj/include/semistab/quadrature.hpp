#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace semistab {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;   // accumulated estimate over accepted intervals
    bool converged = true;
    int intervals = 0;
};

// 7-15 Gauss-Kronrod pair on [a, b]; err is the usual (200|G-K|)^{3/2} estimate.
template <class F>
double gauss_kronrod_15(const F& f, double a, double b, double& err) {
    // {node, gauss weight, kronrod weight}; zero gauss weight marks
    // Kronrod-only nodes.
    static constexpr double nw[8][3] = {
        {0.00000000000000000, 0.41795918367346939, 0.20948214108472783},
        {0.40584515137739717, 0.38183005050511894, 0.19035057806478541},
        {0.74153118559939444, 0.27970539148927667, 0.14065325971552591},
        {0.94910791234275852, 0.12948496616886969, 0.06309209262997855},
        {0.20778495500789847, 0.0, 0.20443294007529889},
        {0.58608723546769113, 0.0, 0.16900472663926790},
        {0.86486442335976907, 0.0, 0.10479001032225018},
        {0.99145537112081264, 0.0, 0.02293532201052922},
    };

    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    double y0 = f(c);
    double g7 = nw[0][1] * y0;
    double k15 = nw[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = h * nw[i][0];
        const double yi = f(c + dx) + f(c - dx);
        g7 += nw[i][1] * yi;
        k15 += nw[i][2] * yi;
    }
    g7 *= h;
    k15 *= h;

    err = 200.0 * std::fabs(g7 - k15);
    err *= std::sqrt(err);
    return k15;
}

// Adaptive bisection with an explicit interval stack.
template <class F>
QuadratureResult integrate(const F& f, double a, double b, double abs_tol = 1e-10,
                           double rel_tol = 1e-10, int max_intervals = 4000) {
    QuadratureResult out;
    if (a == b) return out;

    struct Seg {
        double a, b;
    };
    std::vector<Seg> stack{{a, b}};
    // per-interval budget scales with relative length so the estimates sum to tol
    const double span = std::fabs(b - a);

    while (!stack.empty()) {
        const Seg s = stack.back();
        stack.pop_back();

        double err = 0.0;
        const double v = gauss_kronrod_15(f, s.a, s.b, err);
        const double budget =
            std::max(abs_tol * std::fabs(s.b - s.a) / span, rel_tol * std::fabs(v));
        if (err <= budget || std::fabs(s.b - s.a) < 1e-14 * span) {
            out.value += v;
            out.error += err;
            ++out.intervals;
            continue;
        }
        if (out.intervals + static_cast<int>(stack.size()) + 2 > max_intervals) {
            out.value += v;
            out.error += err;
            ++out.intervals;
            out.converged = false;
            continue;
        }
        const double mid = 0.5 * (s.a + s.b);
        stack.push_back({s.a, mid});
        stack.push_back({mid, s.b});
    }
    return out;
}

// Splits at interior breakpoints (kinks, matching points of piecewise
// definitions) before going adaptive, so the error estimate stays honest.
template <class F>
QuadratureResult integrate_segmented(const F& f, double a, double b,
                                     std::vector<double> breaks, double abs_tol = 1e-10,
                                     double rel_tol = 1e-10, int max_intervals = 4000) {
    std::sort(breaks.begin(), breaks.end());
    QuadratureResult out;
    double lo = a;
    auto accumulate = [&](double hi) {
        if (hi <= lo) return;
        QuadratureResult piece = integrate(f, lo, hi, abs_tol, rel_tol, max_intervals);
        out.value += piece.value;
        out.error += piece.error;
        out.intervals += piece.intervals;
        out.converged = out.converged && piece.converged;
        lo = hi;
    };
    for (double x : breaks)
        if (x > a && x < b) accumulate(x);
    accumulate(b);
    return out;
}

// Improper integral over [a, inf): doubling windows until the increment is
// negligible against the accumulated value.  Integrands are assumed
// eventually decaying; a window that fails to shrink marks the result
// non-converged (the caller reads that as "integral infinite at this
// horizon").
template <class F>
QuadratureResult integrate_to_infinity(const F& f, double a, double abs_tol = 1e-10,
                                       double rel_tol = 1e-10, int max_windows = 48) {
    QuadratureResult out;
    double lo = a;
    double width = std::max(1.0, std::fabs(a));
    double prev_increment = 0.0;
    for (int w = 0; w < max_windows; ++w) {
        const double hi = lo + width;
        QuadratureResult piece = integrate(f, lo, hi, abs_tol, rel_tol);
        out.value += piece.value;
        out.error += piece.error;
        out.intervals += piece.intervals;
        if (!piece.converged) {
            out.converged = false;
            return out;
        }
        const double inc = std::fabs(piece.value);
        const double scale = std::max(std::fabs(out.value), 1.0);
        if (inc <= std::max(abs_tol, rel_tol * scale) &&
            (w > 0 && prev_increment <= std::max(abs_tol, rel_tol * scale)))
            return out;  // two quiet windows in a row
        prev_increment = inc;
        lo = hi;
        width *= 2.0;
    }
    out.converged = false;  // mass still arriving at the horizon
    return out;
}

}  // namespace semistab
