#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "semistab/quadrature.hpp"

using semistab::integrate;
using semistab::integrate_segmented;
using semistab::integrate_to_infinity;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPiHalf = 0.88622692545275801365;  // integral of exp(-t^2) over [0,inf)
}  // namespace

TEST_CASE("gauss-kronrod node is exact on polynomials through degree 20") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    for (int trial = 0; trial < 25; ++trial) {
        std::array<double, 21> c{};
        for (auto& ci : c) ci = coef(rng);
        auto poly = [&](double x) {
            double v = 0.0;
            for (int k = 20; k >= 0; --k) v = v * x + c[static_cast<std::size_t>(k)];
            return v;
        };
        auto antideriv = [&](double x) {
            double v = 0.0;
            for (int k = 20; k >= 0; --k) v = v * x + c[static_cast<std::size_t>(k)] / double(k + 1);
            return v * x;
        };
        double err = 0.0;
        const double got = semistab::gauss_kronrod_15(poly, -1.3, 0.9, err);
        const double want = antideriv(0.9) - antideriv(-1.3);
        CHECK(got == Catch::Approx(want).epsilon(1e-12).margin(1e-12));
    }
}

TEST_CASE("adaptive integration matches closed forms") {
    auto r1 = integrate([](double x) { return std::sin(x); }, 0.0, kPi);
    CHECK(r1.converged);
    CHECK(r1.value == Catch::Approx(2.0).epsilon(1e-11));

    auto r2 = integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
    CHECK(r2.value == Catch::Approx(std::exp(1.0) - 1.0).epsilon(1e-11));

    auto r3 = integrate([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 10.0);
    CHECK(r3.value == Catch::Approx(std::atan(10.0)).epsilon(1e-11));
}

TEST_CASE("adaptive integration agrees with the trapezoid-extrapolation oracle") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> u(0.3, 3.0);
    for (int trial = 0; trial < 10; ++trial) {
        const double a = u(rng), b = u(rng), c = u(rng);
        auto f = [=](double x) { return a * std::sin(b * x + c) + std::exp(-c * x * x); };
        const double want = oracle::romberg(f, -1.0, 2.5);
        auto got = integrate(f, -1.0, 2.5);
        CHECK(got.converged);
        CHECK(got.value == Catch::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("breakpoint-aware splitting handles kinks") {
    auto kink = [](double x) { return std::fabs(x); };
    auto r = integrate_segmented(kink, -1.0, 1.0, {0.0});
    CHECK(r.converged);
    CHECK(r.value == Catch::Approx(1.0).epsilon(1e-12));

    // piecewise definition with a jump in the second derivative
    auto pw = [](double x) { return x < 0.5 ? x * x : 0.25 + (x - 0.5); };
    auto r2 = integrate_segmented(pw, 0.0, 1.0, {0.5});
    const double want = (0.125 / 3.0) + 0.25 * 0.5 + 0.125;
    CHECK(r2.value == Catch::Approx(want).epsilon(1e-12));
}

TEST_CASE("semi-infinite integration converges on decaying tails") {
    auto r1 = integrate_to_infinity([](double t) { return std::exp(-t); }, 0.0);
    CHECK(r1.converged);
    CHECK(r1.value == Catch::Approx(1.0).epsilon(1e-9));

    auto r2 = integrate_to_infinity([](double t) { return std::exp(-t * t); }, 0.0);
    CHECK(r2.converged);
    CHECK(r2.value == Catch::Approx(kSqrtPiHalf).epsilon(1e-9));

    auto r3 = integrate_to_infinity([](double t) { return 1.0 / (1.0 + t * t); }, 0.0, 1e-10, 1e-9);
    CHECK(r3.converged);
    CHECK(r3.value == Catch::Approx(kPi / 2.0).epsilon(1e-7));
}

TEST_CASE("semi-infinite integration flags non-integrable tails") {
    auto r = integrate_to_infinity([](double t) { return 1.0 / (1.0 + t); }, 0.0);
    CHECK_FALSE(r.converged);

    auto r2 = integrate_to_infinity([](double) { return 0.25; }, 0.0);
    CHECK_FALSE(r2.converged);
}

TEST_CASE("exponential tail integrals match 1/(p omega)") {
    const double omega = 0.35;
    for (int p : {1, 2}) {
        auto r = integrate_to_infinity(
            [&](double t) { return std::pow(std::exp(-omega * t), p); }, 0.0);
        CHECK(r.converged);
        CHECK(r.value == Catch::Approx(1.0 / (p * omega)).epsilon(1e-9));
    }
}
