#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace semistab {

namespace detail {

// Evaluate a polynomial given by ascending coefficients.
inline double poly_eval(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

// d/dx of an ascending-coefficient polynomial.
inline std::vector<double> poly_derive(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = double(i) * c[i];
    return d;
}

// p(x) - 2*a*x*q(x), the polynomial part of (q(x) e^{-a x^2})'.
inline std::vector<double> gauss_deriv_poly(const std::vector<double>& q, double a) {
    std::vector<double> r = poly_derive(q);
    r.resize(std::max(r.size(), q.size() + 1), 0.0);
    for (std::size_t i = 0; i < q.size(); ++i) r[i + 1] -= 2.0 * a * q[i];
    return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// A scalar function of one real variable, carried as closures plus the
// metadata the seminorm evaluators and the semigroup actions need: domain,
// compact support (for exact annihilation and integration windows) and
// analytic derivatives up to third order where the construction provides
// them.  Falls back to second-order central differences otherwise.
// ---------------------------------------------------------------------------
struct GridFunction {
    std::string tag;
    std::function<double(double)> value_fn;
    std::function<double(int, double)> deriv_fn;  // orders 1..max_deriv_order
    int max_deriv_order = 3;
    bool analytic_derivs = false;

    double domain_lo = -std::numeric_limits<double>::infinity();
    double domain_hi = std::numeric_limits<double>::infinity();
    bool compact_support = false;
    double support_lo = 0.0;  // meaningful only when compact_support
    double support_hi = 0.0;

    double operator()(double x) const {
        if (x < domain_lo || x > domain_hi) return 0.0;
        if (compact_support && (x < support_lo || x > support_hi)) return 0.0;
        return value_fn(x);
    }

    // Empty support after clipping marks the zero function exactly.
    bool identically_zero() const { return compact_support && support_hi < support_lo; }

    double derivative(int n, double x) const {
        if (n == 0) return (*this)(x);
        if (n < 0 || n > max_deriv_order)
            throw std::invalid_argument("derivative order out of range for " + tag);
        if (identically_zero()) return 0.0;
        if (deriv_fn) return deriv_fn(n, x);
        return central_difference(n, x);
    }

    // O(h^2) central differences; used only when no closed form is attached.
    double central_difference(int n, double x, double h = 1e-4) const {
        const auto& f = *this;
        switch (n) {
            case 1: return (f(x + h) - f(x - h)) / (2.0 * h);
            case 2: return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
            case 3:
                return (f(x + 2 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2 * h)) /
                       (2.0 * h * h * h);
            default: throw std::invalid_argument("central differences cover orders 1..3");
        }
    }
};

// ---------------------------------------------------------------------------
// Factories.
// ---------------------------------------------------------------------------

// P(x) e^{-a x^2} with ascending coefficients; derivatives stay in the family.
inline GridFunction gauss_poly(std::vector<double> coeffs, double a) {
    if (a <= 0.0) throw std::invalid_argument("gauss_poly: need a > 0");
    if (coeffs.empty()) coeffs = {1.0};
    std::vector<std::vector<double>> polys{coeffs};
    for (int n = 1; n <= 3; ++n) polys.push_back(detail::gauss_deriv_poly(polys.back(), a));
    GridFunction g;
    g.tag = "gauss-poly";
    g.value_fn = [coeffs, a](double x) { return detail::poly_eval(coeffs, x) * std::exp(-a * x * x); };
    g.deriv_fn = [polys, a](int n, double x) {
        return detail::poly_eval(polys[std::size_t(n)], x) * std::exp(-a * x * x);
    };
    g.analytic_derivs = true;
    return g;
}

inline GridFunction gaussian(double a = 1.0) { return gauss_poly({1.0}, a); }

// Piecewise-linear interpolant through (knots[i], values[i]); zero outside.
inline GridFunction pw_linear(std::vector<double> knots, std::vector<double> values) {
    if (knots.size() != values.size() || knots.size() < 2)
        throw std::invalid_argument("pw_linear: need matching knot/value lists, length >= 2");
    if (!std::is_sorted(knots.begin(), knots.end()))
        throw std::invalid_argument("pw_linear: knots must be sorted");
    GridFunction g;
    g.tag = "pw-linear";
    g.value_fn = [knots, values](double x) {
        if (x <= knots.front() || x >= knots.back()) {
            if (x == knots.front()) return values.front();
            if (x == knots.back()) return values.back();
            return 0.0;
        }
        auto it = std::upper_bound(knots.begin(), knots.end(), x);
        std::size_t i = std::size_t(it - knots.begin());
        double u = (x - knots[i - 1]) / (knots[i] - knots[i - 1]);
        return values[i - 1] + u * (values[i] - values[i - 1]);
    };
    g.max_deriv_order = 0;  // kinks: derivative access is a caller bug
    g.compact_support = true;
    g.support_lo = knots.front();
    g.support_hi = knots.back();
    return g;
}

// Tent of height n supported on [1 - 2/n, 1]; evaluates to n at 1 - 1/n.
inline GridFunction hat_function(int n) {
    if (n < 2) throw std::invalid_argument("hat_function: need n >= 2");
    double nn = double(n);
    auto g = pw_linear({1.0 - 2.0 / nn, 1.0 - 1.0 / nn, 1.0}, {0.0, nn, 0.0});
    g.tag = "hat";
    return g;
}

// height * indicator of [lo, hi].
inline GridFunction indicator_fn(double lo, double hi, double height) {
    if (!(lo < hi)) throw std::invalid_argument("indicator_fn: need lo < hi");
    GridFunction g;
    g.tag = "indicator";
    g.value_fn = [height](double) { return height; };
    g.max_deriv_order = 0;
    g.compact_support = true;
    g.support_lo = lo;
    g.support_hi = hi;
    return g;
}

// e^{-sqrt(1+x^2)}: smooth, all derivatives bounded, decays like e^{-|x|}.
inline GridFunction exp_sqrt_profile() {
    GridFunction g;
    g.tag = "exp-sqrt";
    g.value_fn = [](double x) { return std::exp(-std::sqrt(1.0 + x * x)); };
    g.deriv_fn = [](int n, double x) {
        double u = std::sqrt(1.0 + x * x);
        double u1 = x / u;
        double u2 = 1.0 / (u * u * u);
        double u3 = -3.0 * x / std::pow(u, 5);
        double f = std::exp(-u);
        switch (n) {
            case 1: return -u1 * f;
            case 2: return (u1 * u1 - u2) * f;
            case 3: return (3.0 * u1 * u2 - u3 - u1 * u1 * u1) * f;
            default: throw std::invalid_argument("exp_sqrt_profile: order out of range");
        }
    };
    g.analytic_derivs = true;
    return g;
}

// Restrict a function to a half-line domain (values outside read as 0).
inline GridFunction restrict_domain(GridFunction g, double lo, double hi) {
    g.domain_lo = lo;
    g.domain_hi = hi;
    return g;
}

}  // namespace semistab
