#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace semistab {

// ---------------------------------------------------------------------------
// Tagged seminorms.  A tag names one member of a scenario's declared seminorm
// family; evaluation lives with the space backend (sequence or function side).
// ---------------------------------------------------------------------------
struct SeminormTag {
    enum class Kind {
        KotheSup,        // max_j a(j,k) |x_j|                     (sequence)
        SumAbs,          // sum_j w_j |x_j|                        (sequence)
        PointEval,       // |f(s)|                                 (function)
        CompactSup,      // sup_{|s| <= n} |f(s)|                  (function)
        WeightedSup,     // sup_s v(s) |f(s)|                      (function)
        SchwartzN,       // max_{k,n <= N} sup_x |x^k f^(n)(x)|    (function)
        SobolevFourier,  // (integral (1+x^2)^n |f(x)|^2 dx)^(1/2) (function)
    };

    Kind kind = Kind::KotheSup;
    int level = 0;        // k, N or n depending on the kind
    double point = 0.0;   // s for PointEval, the window n for CompactSup
    std::string weight;   // "1" | "j" | "2^j" (SumAbs); "1" | "1+x^2" | "e^|x|" (WeightedSup)

    static SeminormTag kothe(int k) { return {Kind::KotheSup, k, 0.0, {}}; }
    static SeminormTag sum_abs(std::string w) { return {Kind::SumAbs, 0, 0.0, std::move(w)}; }
    static SeminormTag point_eval(double s) { return {Kind::PointEval, 0, s, {}}; }
    static SeminormTag compact_sup(double n) { return {Kind::CompactSup, 0, n, {}}; }
    static SeminormTag weighted_sup(std::string v) {
        return {Kind::WeightedSup, 0, 0.0, std::move(v)};
    }
    static SeminormTag schwartz(int N) { return {Kind::SchwartzN, N, 0.0, {}}; }
    static SeminormTag sobolev_fourier(int n) { return {Kind::SobolevFourier, n, 0.0, {}}; }

    std::string label() const {
        std::ostringstream os;
        switch (kind) {
            case Kind::KotheSup: os << "k=" << level; break;
            case Kind::SumAbs: os << "w=" << weight; break;
            case Kind::PointEval: os << "pt(" << point << ")"; break;
            case Kind::CompactSup: os << "sup[-" << point << "," << point << "]"; break;
            case Kind::WeightedSup: os << "wsup(" << weight << ")"; break;
            case Kind::SchwartzN: os << "N=" << level; break;
            case Kind::SobolevFourier: os << "H^" << level; break;
        }
        return os.str();
    }
};

// Weight sequences for SumAbs tags.
inline double sum_abs_weight(const std::string& w, std::size_t j) {
    if (w == "1") return 1.0;
    if (w == "j") return double(j);
    if (w == "2^j") return std::pow(2.0, double(j));
    throw std::invalid_argument("unknown SumAbs weight: " + w);
}

// Weight functions for WeightedSup tags.
inline double weighted_sup_weight(const std::string& v, double x) {
    if (v == "1") return 1.0;
    if (v == "1+x^2") return 1.0 + x * x;
    if (v == "e^|x|") return std::exp(std::fabs(x));
    throw std::invalid_argument("unknown WeightedSup weight: " + v);
}

}  // namespace semistab
