#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace semistab {

// ---------------------------------------------------------------------------
// Least-squares line with coefficient of determination.
// ---------------------------------------------------------------------------
struct LinFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

inline LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw std::invalid_argument("linear_fit: need matched samples");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / double(n), my = sy / double(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LinFit f;
    if (sxx == 0.0) throw std::invalid_argument("linear_fit: degenerate abscissae");
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    if (syy == 0.0) {
        f.r2 = 1.0;  // constant data, perfectly explained by the constant line
    } else {
        double ss_res = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = y[i] - (f.intercept + f.slope * x[i]);
            ss_res += r * r;
        }
        f.r2 = 1.0 - ss_res / syy;
    }
    return f;
}

// Wald-Wolfowitz runs statistic on residual signs; structured residuals give
// |z| large, patternless ones stay below ~2.
inline double runs_test_z(const std::vector<double>& residuals) {
    std::size_t n_pos = 0, n_neg = 0, runs = 0;
    int prev = 0;
    for (double r : residuals) {
        const int s = r >= 0.0 ? 1 : -1;
        (s > 0 ? n_pos : n_neg)++;
        if (s != prev) ++runs;
        prev = s;
    }
    const double n1 = double(n_pos), n2 = double(n_neg);
    if (n_pos == 0 || n_neg == 0) return 1e9;  // all one sign: maximal structure
    const double mu = 2.0 * n1 * n2 / (n1 + n2) + 1.0;
    const double var = (mu - 1.0) * (mu - 2.0) / (n1 + n2 - 1.0);
    if (var <= 0.0) return 0.0;
    return (double(runs) - mu) / std::sqrt(var);
}

// ---------------------------------------------------------------------------
// Decay-class estimation on a sampled trajectory.
// ---------------------------------------------------------------------------
enum class RateClass { Exponential, Polynomial, SuperpolySubexp, Bounded, Divergent };

inline const char* rate_class_name(RateClass c) {
    switch (c) {
        case RateClass::Exponential: return "exponential";
        case RateClass::Polynomial: return "polynomial";
        case RateClass::SuperpolySubexp: return "superpoly-subexp";
        case RateClass::Bounded: return "bounded";
        case RateClass::Divergent: return "divergent";
    }
    return "?";
}

struct RateEstimate {
    RateClass cls = RateClass::Bounded;
    double omega_hat = 0.0;  // Exponential rate
    double alpha_hat = 0.0;  // Polynomial rate
    double fit_quality = 0.0;
    std::vector<double> tail_values;
    bool annihilated = false;  // tail is exactly zero
    std::string warning;
};

// True when the estimated class implies convergence to zero of the series.
inline bool estimate_converges(const RateEstimate& e) {
    if (e.annihilated) return true;
    switch (e.cls) {
        case RateClass::Exponential: return e.omega_hat > 0.0 && e.fit_quality >= 0.99;
        case RateClass::Polynomial: return e.alpha_hat > 0.0 && e.fit_quality >= 0.99;
        case RateClass::SuperpolySubexp: return true;
        case RateClass::Bounded:
        case RateClass::Divergent: return false;
    }
    return false;
}

namespace detail {

constexpr double kLogFloor = -700.0;  // ln of the smallest normal double, roughly

inline double safe_log(double v) { return v > 0.0 ? std::max(std::log(v), kLogFloor) : kLogFloor; }

}  // namespace detail

inline RateEstimate fit_decay(const std::vector<double>& times,
                              const std::vector<double>& values) {
    const std::size_t n = times.size();
    if (n < 8 || values.size() != n)
        throw std::invalid_argument("fit_decay: need at least 8 matched samples");
    for (double v : values)
        if (v < 0.0) throw std::invalid_argument("fit_decay: negative sample");

    const std::size_t tail_len = std::max<std::size_t>(8, (n + 3) / 4);
    const std::size_t t0 = n - std::min(tail_len, n);

    RateEstimate est;
    est.tail_values.assign(values.begin() + static_cast<std::ptrdiff_t>(t0), values.end());

    // exact zeros in the whole tail: the semigroup annihilated the target
    bool all_zero = true;
    for (double v : est.tail_values) all_zero = all_zero && v <= 1e-250;
    if (all_zero) {
        est.cls = RateClass::Bounded;
        est.annihilated = true;
        est.fit_quality = 1.0;
        return est;
    }

    std::vector<double> tt, lt, lv;
    for (std::size_t i = t0; i < n; ++i) {
        tt.push_back(times[i]);
        lt.push_back(std::log(times[i]));
        lv.push_back(detail::safe_log(values[i]));
    }
    const double v_first = values[t0], v_last = values[n - 1];
    double v_max = 0.0;
    for (double v : est.tail_values) v_max = std::max(v_max, v);

    const LinFit exp_fit = linear_fit(tt, lv);   // ln v ~ a - omega t
    const LinFit poly_fit = linear_fit(lt, lv);  // ln v ~ a - alpha ln t

    // growth through the tail window
    if (v_last > 1.2 * v_first && v_last >= 0.8 * v_max && exp_fit.slope > 0.0) {
        est.cls = RateClass::Divergent;
        est.fit_quality = exp_fit.r2;
        return est;
    }

    const bool decaying = v_last < 0.8 * v_first;

    // Intermediate class first: fit both models on the first half of the tail
    // and extrapolate to the last sample.  A sub-exponential, super-polynomial
    // tail lands between them: the polynomial line stays above the data, the
    // exponential line falls below.
    if (decaying && tt.size() >= 8) {
        const std::size_t h = tt.size() / 2;
        std::vector<double> tth(tt.begin(), tt.begin() + static_cast<std::ptrdiff_t>(h));
        std::vector<double> lth(lt.begin(), lt.begin() + static_cast<std::ptrdiff_t>(h));
        std::vector<double> lvh(lv.begin(), lv.begin() + static_cast<std::ptrdiff_t>(h));
        const LinFit exp_h = linear_fit(tth, lvh);
        const LinFit poly_h = linear_fit(lth, lvh);
        const double ln_actual = lv.back();
        const double ln_exp = exp_h.intercept + exp_h.slope * tt.back();
        const double ln_poly = poly_h.intercept + poly_h.slope * lt.back();
        if (ln_poly - ln_actual >= 0.5 && ln_actual - ln_exp >= 0.5) {
            est.cls = RateClass::SuperpolySubexp;
            est.fit_quality = std::max(exp_h.r2, poly_h.r2);
            return est;
        }
    }

    const bool exp_ok = decaying && exp_fit.r2 >= 0.99 && exp_fit.slope < 0.0;
    const bool poly_ok = decaying && poly_fit.r2 >= 0.99 && poly_fit.slope < 0.0;
    if (exp_ok || poly_ok) {
        bool pick_exp = exp_ok;
        if (exp_ok && poly_ok) {
            if (std::fabs(exp_fit.r2 - poly_fit.r2) > 0.005) {
                pick_exp = exp_fit.r2 > poly_fit.r2;
            } else {
                // comparable quality: residual structure decides
                auto residuals = [&](const LinFit& f, const std::vector<double>& x) {
                    std::vector<double> r;
                    for (std::size_t i = 0; i < x.size(); ++i)
                        r.push_back(lv[i] - (f.intercept + f.slope * x[i]));
                    return r;
                };
                const double z_exp = std::fabs(runs_test_z(residuals(exp_fit, tt)));
                const double z_poly = std::fabs(runs_test_z(residuals(poly_fit, lt)));
                pick_exp = z_exp <= z_poly;
            }
        }
        if (pick_exp) {
            est.cls = RateClass::Exponential;
            est.omega_hat = -exp_fit.slope;
            est.fit_quality = exp_fit.r2;
        } else {
            est.cls = RateClass::Polynomial;
            est.alpha_hat = -poly_fit.slope;
            est.fit_quality = poly_fit.r2;
        }
        return est;
    }

    est.cls = RateClass::Bounded;
    est.fit_quality = std::max(exp_fit.r2, poly_fit.r2);
    if (decaying)
        est.warning = "tail decays but fits no model class";
    else if (v_last > 1.05 * v_first)
        est.warning = "tail drifts upward without a clean growth fit";
    else if (est.fit_quality < 0.99 && v_max > 1.05 * v_last)
        est.warning = "oscillating tail with no fit";
    return est;
}

}  // namespace semistab
