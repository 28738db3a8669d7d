#pragma once

// Independent reference implementations used only by the test suite.  These
// deliberately avoid the library's own numerics (Romberg vs Gauss-Kronrod,
// central differences vs analytic derivatives) so agreement is evidence.

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

// Richardson-extrapolated trapezoid rule.
template <class F>
double romberg(const F& f, double a, double b, int levels = 18, double tol = 1e-12) {
    std::vector<double> prev(1, 0.5 * (b - a) * (f(a) + f(b)));
    for (int k = 1; k < levels; ++k) {
        const std::size_t n = std::size_t{1} << k;
        const double h = (b - a) / double(n);
        double sum = 0.0;
        for (std::size_t i = 1; i < n; i += 2) sum += f(a + double(i) * h);
        std::vector<double> row(static_cast<std::size_t>(k) + 1);
        row[0] = 0.5 * prev[0] + h * sum;
        double pow4 = 1.0;
        for (int j = 1; j <= k; ++j) {
            pow4 *= 4.0;
            row[static_cast<std::size_t>(j)] =
                row[static_cast<std::size_t>(j - 1)] +
                (row[static_cast<std::size_t>(j - 1)] - prev[static_cast<std::size_t>(j - 1)]) /
                    (pow4 - 1.0);
        }
        if (k > 3 && std::fabs(row.back() - prev.back()) < tol * (1.0 + std::fabs(row.back())))
            return row.back();
        prev = std::move(row);
    }
    return prev.back();
}

// Central difference stencils, O(h^2).
template <class F>
double diff1(const F& f, double x, double h = 1e-5) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

template <class F>
double diff2(const F& f, double x, double h = 1e-4) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

template <class F>
double diff3(const F& f, double x, double h = 1e-3) {
    return (f(x + 2 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2 * h)) / (2.0 * h * h * h);
}

}  // namespace oracle
