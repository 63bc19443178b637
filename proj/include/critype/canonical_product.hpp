#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "critype/common.hpp"
#include "critype/point_sequence.hpp"

namespace critype {

namespace detail {

// Index range of points whose modulus lies within `halfwidth` of `r`,
// using the nondecreasing modulus order.
inline std::pair<std::size_t, std::size_t> modulus_window(const PointSequence& seq,
                                                         double r, double halfwidth) {
    const auto& pts = seq.points();
    auto lo = std::lower_bound(pts.begin(), pts.end(), r - halfwidth,
                               [](const Complex& p, double v) { return std::abs(p) < v; });
    auto hi = std::upper_bound(pts.begin(), pts.end(), r + halfwidth,
                               [](double v, const Complex& p) { return v < std::abs(p); });
    return {static_cast<std::size_t>(lo - pts.begin()),
            static_cast<std::size_t>(hi - pts.begin())};
}

// Distance from z to the nearest sequence point, and that point's index.
// Only points whose modulus is within the current best distance of |z| can
// improve, so the scan expands a modulus window until it is exhausted.
inline std::pair<double, std::size_t> nearest_point(const PointSequence& seq,
                                                    Complex z) {
    const auto& pts = seq.points();
    const double r = std::abs(z);
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_idx = 0;
    double halfwidth = 1.0;
    for (;;) {
        auto [lo, hi] = modulus_window(seq, r, halfwidth);
        for (std::size_t i = lo; i < hi; ++i) {
            const double d = std::abs(pts[i] - z);
            if (d < best) { best = d; best_idx = i; }
        }
        if (halfwidth >= best || (lo == 0 && hi == pts.size())) break;
        halfwidth = std::max(2.0 * halfwidth, best);
    }
    return {best, best_idx};
}

// Typical spacing near a point: distance to its nearest distinct-position
// neighbour within a modulus window, defaulting to 1 when isolated.
inline double local_spacing(const PointSequence& seq, std::size_t idx) {
    const auto& pts = seq.points();
    const Complex c = pts[idx];
    auto [lo, hi] = modulus_window(seq, std::abs(c), 2.0);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = lo; i < hi; ++i) {
        if (i == idx) continue;
        const double d = std::abs(pts[i] - c);
        if (d > 0.0 && d < best) best = d;
    }
    if (!std::isfinite(best)) return 1.0;
    return std::min(best, 1.0);
}

}  // namespace detail

// log |product over the sequence of (1 - z/lambda) e^{z/lambda}|, truncated
// at the sequence itself; empty when z falls inside the exclusion zone of a
// zero (a quarter of the local spacing).
inline std::optional<double> try_log_abs_product(const PointSequence& seq, Complex z) {
    if (seq.empty()) throw invalid_input("log_abs_product: empty sequence");
    if (!is_finite(z)) throw invalid_input("log_abs_product: non-finite argument");
    auto [dist, idx] = detail::nearest_point(seq, z);
    if (dist < 0.25 * detail::local_spacing(seq, idx)) return std::nullopt;
    CompensatedSum s;
    for (const auto& p : seq.points()) {
        const Complex w = z / p;
        s.add(std::log(std::abs(1.0 - w)) + w.real());
    }
    return s.value();
}

inline double log_abs_product(const PointSequence& seq, Complex z) {
    auto v = try_log_abs_product(seq, z);
    if (!v) throw computation_error("log_abs_product: argument too close to a zero");
    return *v;
}

struct IndicatorEstimate {
    double angle = 0.0;
    double value = 0.0;           // max over usable radii of log|f(r e^{it})| / r
    double spread = 0.0;          // max - min across radii, plus the truncation allowance
    std::vector<double> radii_used;
};

// Estimate of the indicator lim sup log|f(r e^{it})| / r from finitely many
// radii. Radii must stay below 0.4 of the truncation cutoff so the neglected
// tail (bounded by r * density / cutoff after summation) stays small; each
// radius may be nudged in 1% steps to escape an exclusion zone.
inline IndicatorEstimate indicator_estimate(const PointSequence& seq, double angle,
                                            const std::vector<double>& radii) {
    if (seq.empty()) throw invalid_input("indicator_estimate: empty sequence");
    if (radii.empty()) throw invalid_input("indicator_estimate: no radii");
    const double cutoff = seq.max_modulus();
    const double cap = 0.4 * cutoff;
    for (double r : radii) {
        if (!(r > 0.0)) throw invalid_input("indicator_estimate: radius must be positive");
        if (r > cap * (1.0 + 1e-12))
            throw invalid_input("indicator_estimate: radius beyond truncation validity");
    }
    const double density_hat = static_cast<double>(seq.size()) / cutoff;

    IndicatorEstimate out;
    out.angle = normalize_angle(angle);
    const Complex dir = std::polar(1.0, out.angle);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    double tail = 0.0;
    for (double r : radii) {
        double used = -1.0;
        std::optional<double> val;
        for (int step = 0; step <= 20 && !val; ++step) {
            const int signed_steps[2] = {step, -step};
            for (int s : signed_steps) {
                const double rr = r * (1.0 + 0.01 * s);
                if (!(rr > 0.0) || rr > cap * (1.0 + 1e-12)) continue;
                val = try_log_abs_product(seq, rr * dir);
                if (val) { used = rr; break; }
            }
        }
        if (!val) continue;
        const double scaled = *val / used;
        lo = std::min(lo, scaled);
        hi = std::max(hi, scaled);
        tail = std::max(tail, used * density_hat / cutoff);
        out.radii_used.push_back(used);
    }
    if (out.radii_used.empty())
        throw computation_error("indicator_estimate: every radius fell in an exclusion zone");
    out.value = hi;
    out.spread = (hi - lo) + tail;
    return out;
}

// Max of the indicator estimate over an angular grid; angles whose every
// radius is excluded are skipped.
inline double type_estimate(const PointSequence& seq, int n_angles,
                            const std::vector<double>& radii) {
    if (n_angles < 8) throw invalid_input("type_estimate: need at least 8 angles");
    double best = -std::numeric_limits<double>::infinity();
    int evaluated = 0;
    for (int i = 0; i < n_angles; ++i) {
        try {
            const auto est = indicator_estimate(seq, two_pi * i / n_angles, radii);
            best = std::max(best, est.value);
            ++evaluated;
        } catch (const computation_error&) {
        }
    }
    if (evaluated == 0)
        throw computation_error("type_estimate: no angle could be evaluated");
    return best;
}

}  // namespace critype
