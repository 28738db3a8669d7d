#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace semistab {

// Log-spaced evaluation times for trajectory and certificate scans.
struct TimeGrid {
    double t_min = 0.1;
    double t_max = 1e3;
    int points = 48;

    std::vector<double> samples() const {
        std::vector<double> t;
        t.reserve(static_cast<std::size_t>(points));
        if (points == 1) {
            t.push_back(t_min);
            return t;
        }
        const double ratio = std::log(t_max / t_min);
        for (int i = 0; i < points; ++i)
            t.push_back(t_min * std::exp(ratio * double(i) / double(points - 1)));
        return t;
    }
};

// Finite truncation at which infinite objects are evaluated.  Every verdict
// produced downstream is relative to one of these profiles; the convergence
// diagnostics compare a profile against its doubled version.
struct TruncationProfile {
    std::size_t index_count = 200;   // leading coordinates kept in sequence spaces
    int level_max = 5;               // seminorm levels probed (k = 1..level_max)
    int pairing_level_max = 14;      // levels searched when a second index is quantified
    double domain_radius = 20.0;     // initial sup window for function spaces
    double domain_radius_cap = 8192.0;
    TimeGrid times;                  // certificate horizon

    TruncationProfile doubled() const {
        TruncationProfile p = *this;
        p.index_count *= 2;
        return p;
    }
};

inline TruncationProfile default_sequence_profile() { return {}; }

// Function spaces share the sequence grid: sub-exponential decay that would
// only overtake an e^{omega t} scaling beyond any affordable horizon is
// handled by the fit-class veto in the certifier, not by a longer grid.
inline TruncationProfile default_function_profile() { return {}; }

}  // namespace semistab
