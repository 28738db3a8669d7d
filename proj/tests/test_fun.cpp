#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <utility>
#include <vector>

#include <semistab/bounded_sets.hpp>
#include <semistab/fun_semigroup.hpp>
#include <semistab/functions.hpp>
#include <semistab/seminorms.hpp>

#include "oracles.hpp"

using Catch::Approx;
using namespace semistab;

TEST_CASE("gauss_poly evaluates P(x) e^{-a x^2} with closed-form derivatives") {
    auto f = gauss_poly({1.0, 0.0, 3.0}, 0.5);  // (1 + 3 x^2) e^{-x^2/2}
    CHECK(f(0.0) == Approx(1.0));
    CHECK(f(1.0) == Approx(4.0 * std::exp(-0.5)));
    for (double x : {-1.7, -0.3, 0.0, 0.4, 2.2}) {
        for (int n = 1; n <= 3; ++n) {
            double exact = f.derivative(n, x);
            double fd = f.central_difference(n, x, 1e-3);
            CHECK(exact == Approx(fd).margin(1e-4 * (1.0 + std::fabs(exact))));
        }
    }
}

TEST_CASE("central differences converge at second order") {
    auto f = exp_sqrt_profile();
    for (int n = 1; n <= 3; ++n) {
        double exact = f.derivative(n, 0.7);
        double e1 = std::fabs(f.central_difference(n, 0.7, 1e-2) - exact);
        double e2 = std::fabs(f.central_difference(n, 0.7, 5e-3) - exact);
        REQUIRE(e2 > 0.0);
        CHECK(e1 / e2 > 2.5);
        CHECK(e1 / e2 < 6.0);
    }
}

TEST_CASE("exp_sqrt_profile closed-form derivatives match differences") {
    auto f = exp_sqrt_profile();
    CHECK(f(0.0) == Approx(std::exp(-1.0)));
    for (double x : {-2.4, -0.9, 0.0, 1.3, 3.8}) {
        for (int n = 1; n <= 3; ++n) {
            double exact = f.derivative(n, x);
            double fd = f.central_difference(n, x, 1e-3);
            CHECK(exact == Approx(fd).margin(1e-5));
        }
    }
}

TEST_CASE("hat function peaks at the interior knot") {
    auto f4 = hat_function(4);  // knots 0.5, 0.75, 1.0
    CHECK(f4(0.5) == 0.0);
    CHECK(f4(0.75) == Approx(4.0));
    CHECK(f4(1.0) == 0.0);
    CHECK(f4(0.625) == Approx(2.0));
    CHECK(f4(0.2) == 0.0);
    CHECK(f4(1.4) == 0.0);
}

TEST_CASE("right shift reads the state through its own zero continuation") {
    // [T(t)f](s) = f(s - t); hats of height n hit n at s = 1 when t = 1/n
    for (int n : {2, 5, 16}) {
        auto fn = hat_function(n);
        auto g = shift_apply(1.0 / double(n), fn);
        CHECK(g(1.0) == Approx(double(n)));
    }
    // domain mask: on [0, inf) with f(0) = 0 the shift continues by zero
    auto f = restrict_domain(hat_function(4), 0.0, std::numeric_limits<double>::infinity());
    auto g = shift_apply(2.0, f);
    CHECK(g(1.0) == 0.0);   // would read f(-1): masked
    CHECK(g(2.75) == Approx(4.0));
}

TEST_CASE("left half-line shift annihilates compactly supported states") {
    auto bump = restrict_domain(pw_linear({-3.0, -2.0, -1.0}, {0.0, 1.0, 0.0}),
                                -std::numeric_limits<double>::infinity(), 0.0);
    auto g1 = shift_apply(0.5, bump);
    CHECK(g1(-1.5) == Approx(1.0));
    CHECK_FALSE(g1.identically_zero());
    auto g2 = shift_apply(3.5, bump);
    CHECK(g2.identically_zero());
    CHECK(fun_seminorm(SeminormTag::weighted_sup("e^|x|"), g2).value == 0.0);
}

TEST_CASE("weighted sups contract under the half-line shift") {
    auto bump = restrict_domain(pw_linear({-3.0, -2.0, -1.0}, {0.0, 1.0, 0.0}),
                                -std::numeric_limits<double>::infinity(), 0.0);
    for (const char* w : {"1", "1+x^2", "e^|x|"}) {
        auto tag = SeminormTag::weighted_sup(w);
        double before = fun_seminorm(tag, bump).value;
        double after = fun_seminorm(tag, shift_apply(0.8, bump)).value;
        CHECK(after <= before * (1.0 + 1e-9));
    }
}

TEST_CASE("scalar field presets satisfy their declared bounds") {
    CHECK_NOTHROW(validate_scalar_field(field_sin_minus_1()));
    CHECK_NOTHROW(validate_scalar_field(field_neg_inv_one_plus_x2()));
    CHECK_NOTHROW(validate_scalar_field(field_constant(-0.5)));
    CHECK_NOTHROW(validate_scalar_field(field_interp_neg_inv_abs()));
    ScalarField bad = field_constant(-2.0);
    bad.sup_abs[0] = 1.0;
    CHECK_THROWS(validate_scalar_field(bad));
}

TEST_CASE("field windows match an independent integrator") {
    auto F = field_sin_minus_1();
    for (double x : {-4.2, 0.0, 1.9}) {
        for (double t : {0.4, 2.0, 7.3}) {
            double closed = field_window(F, x, t);
            double quad = oracle::romberg(F.q, x, x + t);
            CHECK(closed == Approx(quad).margin(1e-9));
        }
    }
    auto G = field_interp_neg_inv_abs();
    for (double x : {-2.0, -0.7, 0.5, 1.5}) {
        double closed = field_window(G, x, 1.1);
        double quad = oracle::romberg(G.q, x, x + 1.1);
        CHECK(closed == Approx(quad).margin(1e-7));
    }
}

TEST_CASE("mu_q of sin(x)-1 equals 2|sin(t/2)| - t") {
    auto F = field_sin_minus_1();
    for (double t : {0.3, 1.0, 2.7, 5.0, 13.7, 26.0, 50.0}) {
        auto m = mu_q(F, t);
        CHECK_FALSE(m.sup_not_localized);
        double exact = 2.0 * std::fabs(std::sin(t / 2.0)) - t;
        CHECK(m.value == Approx(exact).margin(1e-6));
        CHECK(m.value <= 2.0 - t + 1e-9);
    }
}

TEST_CASE("mu_q of a constant field is linear and localized everywhere") {
    auto F = field_constant(-1.0);
    for (double t : {0.5, 4.0, 30.0}) {
        auto m = mu_q(F, t);
        CHECK_FALSE(m.sup_not_localized);
        CHECK(m.value == Approx(-t).margin(1e-9));
    }
}

TEST_CASE("mu_q flags sups attained only in the limit") {
    for (auto F : {field_neg_inv_one_plus_x2(), field_interp_neg_inv_abs()}) {
        auto m = mu_q(F, 3.0);
        CHECK(m.sup_not_localized);
        CHECK(m.value == 0.0);
        CHECK(m.note.find("sup not localized") != std::string::npos);
    }
}

TEST_CASE("mu_q is subadditive") {
    auto F = field_sin_minus_1();
    const std::vector<std::pair<double, double>> pairs{
        {0.5, 0.8}, {1.0, 2.0}, {3.3, 4.1}, {10.0, 20.0}};
    for (auto [s, t] : pairs) {
        double a = mu_q(F, s).value, b = mu_q(F, t).value, c = mu_q(F, s + t).value;
        CHECK(c <= a + b + 1e-7);
    }
}

TEST_CASE("mu_rate separates uniform, oscillating and vanishing windows") {
    auto r1 = mu_rate(field_constant(-1.0));
    CHECK(r1.rate == Approx(1.0).margin(1e-6));
    CHECK_FALSE(r1.sup_not_localized);

    auto r2 = mu_rate(field_sin_minus_1());
    CHECK(r2.rate >= 0.9);
    CHECK(r2.rate <= 1.0);

    auto r3 = mu_rate(field_neg_inv_one_plus_x2());
    CHECK(r3.rate == 0.0);
    CHECK(r3.sup_not_localized);
}

TEST_CASE("transport trajectories carry the exact window factor") {
    auto F = field_sin_minus_1();
    auto f = gaussian(1.0);
    for (double t : {0.6, 2.2}) {
        auto g = transport_apply(F, t, f);
        for (double x : {-1.2, 0.0, 0.9}) {
            double expected = std::exp(std::cos(x) - std::cos(x + t) - t) * f(x + t);
            CHECK(g(x) == Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("transport satisfies the evolution law") {
    auto F = field_sin_minus_1();
    auto f = gaussian(1.0);
    double s = 0.7, t = 1.3;
    auto two_step = transport_apply(F, t, transport_apply(F, s, f));
    auto one_step = transport_apply(F, s + t, f);
    for (double x : {-2.0, -0.4, 0.0, 1.1, 2.6}) {
        CHECK(two_step(x) == Approx(one_step(x)).margin(1e-9));
        for (int n = 1; n <= 3; ++n)
            CHECK(two_step.derivative(n, x) == Approx(one_step.derivative(n, x)).margin(1e-7));
    }
}

TEST_CASE("transport and multiplication derivatives match differences") {
    auto F = field_sin_minus_1();
    auto f = gaussian(1.0);
    auto tr = transport_apply(F, 1.4, f);
    auto mu = mult_apply(F, 1.4, f);
    REQUIRE(tr.analytic_derivs);
    REQUIRE(mu.analytic_derivs);
    for (double x : {-1.3, 0.2, 1.8}) {
        for (int n = 1; n <= 3; ++n) {
            CHECK(tr.derivative(n, x) ==
                  Approx(tr.central_difference(n, x, 1e-3)).margin(2e-4));
            CHECK(mu.derivative(n, x) ==
                  Approx(mu.central_difference(n, x, 1e-3)).margin(2e-4));
        }
    }
}

TEST_CASE("transport moves compact supports left and annihilates on half-lines") {
    auto F = field_constant(-0.25);
    auto bump = pw_linear({2.0, 3.0, 4.0}, {0.0, 1.0, 0.0});
    auto g = transport_apply(F, 1.5, bump);
    CHECK(g.support_lo == Approx(0.5));
    CHECK(g.support_hi == Approx(2.5));
    CHECK(g(1.5) == Approx(std::exp(-0.25 * 1.5)));
}

TEST_CASE("schwartz seminorm of the unit gaussian") {
    auto f = gaussian(1.0);
    CHECK(schwartz_seminorm(f, 0).value == Approx(1.0).margin(1e-9));
    CHECK(schwartz_seminorm(f, 1).value == Approx(1.0).margin(1e-9));
    // |f''(0)| = 2 dominates every other k,n <= 2 combination
    CHECK(schwartz_seminorm(f, 2).value == Approx(2.0).margin(1e-6));
    CHECK_FALSE(schwartz_seminorm(f, 2).radius_too_small);
}

TEST_CASE("schwartz window expands until the tail clears") {
    auto f = exp_sqrt_profile();
    CHECK(schwartz_seminorm(f, 0, 20.0).radius_too_small);
    CHECK_FALSE(schwartz_seminorm(f, 0, 40.0).radius_too_small);
    auto ev = fun_seminorm(SeminormTag::schwartz(0), f);
    CHECK_FALSE(ev.radius_capped);
    CHECK(ev.radius_used == Approx(40.0));
    CHECK(ev.value == Approx(std::exp(-1.0)).margin(1e-9));
}

TEST_CASE("heat multiplier and Fourier-side application") {
    CHECK(heat_multiplier({0.0, 0.0}, 1.0, 1.0) == Approx(std::exp(-1.0)));
    CHECK(heat_multiplier({-1.0, 0.5}, 2.0, 0.0) == Approx(std::exp(-2.0)));
    FourierProfile p{gaussian(1.0), {-1.0, 0.0}, 0.0};
    auto p1 = heat_apply_fourier(heat_apply_fourier(p, 0.7), 0.3);
    auto p2 = heat_apply_fourier(p, 1.0);
    CHECK(p1.applied_time == Approx(p2.applied_time));
    for (int n = 0; n <= 3; ++n) {
        double a = sobolev_fourier_seminorm(p1, n).value;
        double b = sobolev_fourier_seminorm(p2, n).value;
        CHECK(a == Approx(b).epsilon(1e-12));
    }
}

TEST_CASE("indicator profiles reproduce the closed-form witness integrals") {
    // k int_0^{1/k} e^{-k x^2} dx = sqrt(k) (sqrt(pi)/2) erf(1/sqrt(k))
    for (double k : {2.0, 10.0, 100.0}) {
        FourierProfile p{indicator_fn(0.0, 1.0 / k, std::sqrt(k)), {0.0, 0.0}, 0.0};
        auto evolved = heat_apply_fourier(p, k / 2.0);
        double v = sobolev_fourier_seminorm(evolved, 0).value;
        double sqrt_pi = std::sqrt(std::acos(-1.0));
        double exact =
            std::sqrt(std::sqrt(k) * (sqrt_pi / 2.0) * std::erf(1.0 / std::sqrt(k)));
        CHECK(v == Approx(exact).margin(1e-8));
        CHECK(v * v >= 1.0 - std::exp(-1.0) - 1e-9);
    }
    // |f_k|_n^2 <= 2^n before evolution
    for (double k : {2.0, 10.0}) {
        FourierProfile p{indicator_fn(0.0, 1.0 / k, std::sqrt(k)), {0.0, 0.0}, 0.0};
        for (int n = 0; n <= 3; ++n) {
            double v = sobolev_fourier_seminorm(p, n).value;
            CHECK(v * v <= std::pow(2.0, n) + 1e-9);
        }
    }
}

TEST_CASE("sobolev window flags slowly decaying profiles") {
    GridFunction slow;
    slow.tag = "lorentz";
    slow.value_fn = [](double x) { return 1.0 / (1.0 + x * x); };
    slow.max_deriv_order = 0;
    FourierProfile p{slow, {0.0, 0.0}, 0.0};
    CHECK(sobolev_fourier_seminorm(p, 0).radius_too_small);
    FourierProfile g{gaussian(1.0), {0.0, 0.0}, 0.0};
    CHECK_FALSE(sobolev_fourier_seminorm(g, 0).radius_too_small);
}

TEST_CASE("gaussian damping tail sup has the closed form (k/(4et))^{k/2}") {
    for (int k : {1, 2, 3, 4}) {
        for (double t : {0.5, 3.0}) {
            double xstar = std::sqrt(double(k) / (4.0 * t));
            double lo = 0.0, hi = 3.0 * xstar + 1.0;
            double best = 0.0;
            std::size_t n = 400001;
            for (std::size_t i = 0; i < n; ++i) {
                double x = lo + (hi - lo) * double(i) / double(n - 1);
                best = std::max(best, std::pow(x, k) * std::exp(-2.0 * x * x * t));
            }
            double closed = std::pow(double(k) / (4.0 * std::exp(1.0) * t), 0.5 * k);
            CHECK(best == Approx(closed).epsilon(1e-6));
            // dominated by the coarser t^{-k/2} (k/(2e))^{k/2} envelope
            double envelope = std::pow(double(k) / (2.0 * std::exp(1.0)), 0.5 * k) *
                              std::pow(t, -0.5 * k);
            CHECK(closed <= envelope * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("pointwise and compact-window seminorms") {
    auto f = hat_function(4);
    CHECK(fun_seminorm(SeminormTag::point_eval(0.75), f).value == Approx(4.0));
    CHECK(fun_seminorm(SeminormTag::point_eval(3.0), f).value == 0.0);
    CHECK(fun_seminorm(SeminormTag::compact_sup(1.0), f).value == Approx(4.0).margin(1e-2));
    CHECK(fun_seminorm(SeminormTag::compact_sup(0.3), f).value == 0.0);
    auto c = indicator_fn(-0.5, 0.5, 2.0);
    CHECK(fun_seminorm(SeminormTag::compact_sup(5.0), c).value == Approx(2.0));
}

TEST_CASE("function targets enumerate fixed members and families") {
    auto probe = fun_probe("g", [](double t) { return shift_apply(t, hat_function(4)); });
    CHECK(probe.members(99).size() == 1);
    auto fam = fun_set_family(
        "hats",
        [](std::size_t count) {
            std::vector<FunMember> ms;
            for (std::size_t n = 2; n < 2 + count; ++n)
                ms.push_back({"hat" + std::to_string(n),
                              [n](double t) { return shift_apply(t, hat_function(int(n))); }});
            return ms;
        },
        4);
    CHECK(fam.members(4).size() == 4);
    CHECK(fam.members(8).size() == 8);
    CHECK(fam.members(6)[5].at(0.0)(1.0 - 1.0 / 7.0) == Approx(7.0));
}

TEST_CASE("diagonal target envelopes and admissibility") {
    auto A = builtin_matrix("s");
    auto e1 = diag_probe_basis(1);
    CHECK(e1.envelope(1, 50) == 1.0);
    CHECK(e1.envelope(2, 50) == 0.0);
    auto dd = diag_probe_dense_decay();
    CHECK(dd.envelope(3, 50) == Approx(std::exp(-3.0)));
    CHECK(std::abs(dd.point(50).at(3)) == Approx(std::exp(-3.0)));
    std::vector<int> levels{0, 1, 2, 3, 4, 5};
    CHECK_NOTHROW(check_diag_target_admissible(A, dd, levels, 50));
    CHECK_NOTHROW(check_diag_target_admissible(
        A, diag_set_envelope("env", [](std::size_t j) { return std::exp(-double(j)); }), levels,
        50));
    // unit vectors are unbounded against s-type weights: must be declared so
    auto bad = diag_set_basis_family(true);
    CHECK_THROWS(check_diag_target_admissible(A, bad, levels, 50));
    CHECK_NOTHROW(check_diag_target_admissible(A, diag_set_basis_family(false), levels, 50));
    // against the uniformly bounded matrix the same family is bounded
    CHECK_NOTHROW(check_diag_target_admissible(builtin_matrix("constant"),
                                               diag_set_basis_family(true), levels, 50));
}
