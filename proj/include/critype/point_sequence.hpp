#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "critype/angular_measure.hpp"
#include "critype/common.hpp"

namespace critype {

// Finite multiset of nonzero complex points with moduli at least 1, stored in
// nondecreasing modulus order.
class PointSequence {
    std::vector<Complex> pts_;

    struct presorted_tag {};
    PointSequence(std::vector<Complex> pts, presorted_tag) : pts_(std::move(pts)) {}

public:
    PointSequence() = default;

    explicit PointSequence(std::vector<Complex> pts) {
        for (const auto& p : pts) {
            if (!is_finite(p)) throw invalid_input("point sequence: non-finite point");
            if (std::abs(p) < 1.0 - 1e-12)
                throw invalid_input("point sequence: modulus below 1");
        }
        std::sort(pts.begin(), pts.end(), [](const Complex& a, const Complex& b) {
            const double ma = std::abs(a), mb = std::abs(b);
            if (ma != mb) return ma < mb;
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
        pts_ = std::move(pts);
    }

    // Trusted path for callers that construct points already in modulus order
    // and rely on a specific adjacency (pair cancellation in symmetrize).
    static PointSequence from_sorted(std::vector<Complex> pts) {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (!is_finite(pts[i])) throw invalid_input("point sequence: non-finite point");
            if (std::abs(pts[i]) < 1.0 - 1e-12)
                throw invalid_input("point sequence: modulus below 1");
            if (i > 0 && std::abs(pts[i]) < std::abs(pts[i - 1]) - 1e-12)
                throw invalid_input("point sequence: moduli not nondecreasing");
        }
        return PointSequence(std::move(pts), presorted_tag{});
    }

    const std::vector<Complex>& points() const { return pts_; }
    std::size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }
    double max_modulus() const { return pts_.empty() ? 0.0 : std::abs(pts_.back()); }
};

namespace detail {

// Ray points k e^{i alpha} / A for ceil(A) <= k <= floor(A * rmax); empty
// when the range is.
inline std::vector<Complex> ray_points(double alpha, double amplitude, double rmax) {
    const auto kmin = static_cast<long long>(std::ceil(amplitude));
    const auto kmax = static_cast<long long>(std::floor(amplitude * rmax));
    std::vector<Complex> pts;
    if (kmax < kmin) return pts;
    pts.reserve(static_cast<std::size_t>(kmax - kmin + 1));
    const Complex dir = std::polar(1.0, normalize_angle(alpha));
    for (long long k = kmin; k <= kmax; ++k)
        pts.push_back((static_cast<double>(k) / amplitude) * dir);
    return pts;
}

}  // namespace detail

// Arithmetic progression of moduli k/A along the ray of direction alpha; its
// counting function grows like A * r.
inline PointSequence ray_sequence(double alpha, double amplitude, double rmax) {
    if (!(amplitude > 0.0)) throw invalid_input("ray_sequence: amplitude must be positive");
    if (!(rmax >= 1.0 / amplitude))
        throw invalid_input("ray_sequence: rmax below the first modulus");
    auto pts = detail::ray_points(alpha, amplitude, rmax);
    if (pts.empty()) throw invalid_input("ray_sequence: empty range");
    return PointSequence::from_sorted(std::move(pts));
}

// Realize a measure as a point set up to modulus rmax: one ray per atom, and
// the density part filled shell by shell ([m, m+1) holds its expected count)
// at inverse-CDF directions driven by a golden-ratio low-discrepancy sequence
// seeded from `seed`.
inline PointSequence from_measure(const AngularMeasure& m, double rmax,
                                  std::uint64_t seed) {
    if (!(rmax >= 2.0)) throw invalid_input("from_measure: rmax must be at least 2");
    std::vector<Complex> pts;
    for (const auto& atom : m.atoms()) {
        auto ray = detail::ray_points(atom.angle, atom.mass, rmax);
        pts.insert(pts.end(), ray.begin(), ray.end());
    }

    double density_total = 0.0;
    std::vector<double> cdf{0.0};
    for (const auto& c : m.density()) {
        density_total += c.value * (c.hi - c.lo);
        cdf.push_back(density_total);
    }
    if (density_total > 0.0) {
        SplitMix64 mix(seed);
        const double count_offset = mix.next_unit();
        const double angle_offset = mix.next_unit();
        constexpr double golden = 0.6180339887498948482;
        auto inverse_cdf = [&](double u) {
            const double target = u * density_total;
            std::size_t i = 0;
            while (i + 1 < cdf.size() && cdf[i + 1] < target) ++i;
            const auto& c = m.density()[i];
            return c.lo + (target - cdf[i]) / c.value;
        };
        std::size_t j = 0;
        for (double shell = 1.0; shell + 1.0 <= rmax; shell += 1.0) {
            const auto lo = static_cast<long long>(
                std::floor(density_total * shell + count_offset));
            const auto hi = static_cast<long long>(
                std::floor(density_total * (shell + 1.0) + count_offset));
            const long long n = hi - lo;
            for (long long i = 0; i < n; ++i, ++j) {
                const double u =
                    std::fmod(angle_offset + static_cast<double>(j) * golden, 1.0);
                const double r =
                    shell + (static_cast<double>(i) + 0.5) / static_cast<double>(n);
                pts.push_back(std::polar(r, inverse_cdf(u)));
            }
        }
    }
    return PointSequence(std::move(pts));
}

// Number of points with modulus strictly below R and argument in the open
// sector from alpha to beta; alpha > beta wraps through 0.
inline long long counting(const PointSequence& seq, double R, double alpha,
                          double beta) {
    if (!(alpha >= 0.0 && alpha <= two_pi && beta >= 0.0 && beta <= two_pi))
        throw invalid_input("counting: sector bounds outside [0, 2*pi]");
    if (alpha == beta) return 0;
    const bool wraps = alpha > beta;
    long long n = 0;
    for (const auto& p : seq.points()) {
        if (std::abs(p) >= R) break;
        const double t = normalize_angle(std::arg(p));
        const bool inside = wraps ? (t > alpha || t < beta) : (t > alpha && t < beta);
        if (inside) ++n;
    }
    return n;
}

inline double empirical_density(const PointSequence& seq, double R, double alpha,
                                double beta) {
    if (!(R > 0.0)) throw invalid_input("empirical_density: R must be positive");
    return static_cast<double>(counting(seq, R, alpha, beta)) / R;
}

// Partial sum of 1/lambda over moduli at most R, taken in storage order.
inline Complex lindelof_sum(const PointSequence& seq, double R) {
    Complex s{0.0, 0.0};
    for (const auto& p : seq.points()) {
        if (std::abs(p) > R) break;
        s += 1.0 / p;
    }
    return s;
}

// Union with the negated set, negation adjacent to its original so the
// reciprocal sums cancel exactly in storage order.
inline PointSequence symmetrize(const PointSequence& seq) {
    std::vector<Complex> pts;
    pts.reserve(2 * seq.size());
    for (const auto& p : seq.points()) {
        pts.push_back(p);
        pts.push_back(-p);
    }
    return PointSequence::from_sorted(std::move(pts));
}

inline PointSequence merge(const PointSequence& a, const PointSequence& b) {
    std::vector<Complex> pts = a.points();
    pts.insert(pts.end(), b.points().begin(), b.points().end());
    return PointSequence(std::move(pts));
}

// Add the ray realizing the measure's balancing atom; no-op when the measure
// is already balanced or the ray holds no point below rmax.
inline PointSequence augment_ray(const PointSequence& seq, const AngularMeasure& m,
                                 double rmax) {
    const BalancingAtom bal = m.balancing_atom();
    if (bal.balanced) return seq;
    auto ray = detail::ray_points(bal.angle, bal.amplitude, rmax);
    if (ray.empty()) return seq;
    return merge(seq, PointSequence::from_sorted(std::move(ray)));
}

struct BalanceOutcome {
    PointSequence added;             // the compensating point set
    Complex residual_before{0.0, 0.0};  // reciprocal sum of the input at rmax
    Complex residual_after{0.0, 0.0};   // same sum with the added set merged in
    bool budget_exhausted = false;   // some level wanted more points than allowed
};

// Heuristic reciprocal-sum balancing: walk radii 2, 4, 8, ... up to rmax
// (closing at rmax itself); at each level cancel the accumulated residual c
// with multiplicity-m points, m capped so the total added count after each
// level stays within floor(level^budget_exponent). An affordable level kills c exactly
// by placing m copies of -m/c (modulus between R/2 and R); a capped level
// pushes c toward zero from modulus R in the reflected direction.
inline BalanceOutcome lunc_balance(const PointSequence& seq, double rmax,
                                   double budget_exponent = 0.5) {
    if (!(rmax >= 2.0)) throw invalid_input("lunc_balance: rmax must be at least 2");
    if (!(budget_exponent > 0.0 && budget_exponent < 1.0))
        throw invalid_input("lunc_balance: budget exponent must lie in (0, 1)");

    std::vector<double> levels;
    for (double r = 2.0; r <= rmax; r *= 2.0) levels.push_back(r);
    if (levels.empty() || levels.back() < rmax) levels.push_back(rmax);

    BalanceOutcome out;
    std::vector<Complex> added;
    Complex s_added{0.0, 0.0};
    long long budget_used = 0;
    for (double level : levels) {
        const auto cap = static_cast<long long>(std::floor(std::pow(level, budget_exponent)));
        const long long avail = cap - budget_used;
        if (avail <= 0) continue;
        const Complex c = lindelof_sum(seq, level) + s_added;
        const auto need = static_cast<long long>(std::floor(std::abs(c) * level));
        if (need < 1) continue;
        const long long mult = std::min(need, avail);
        if (mult < need) out.budget_exhausted = true;
        Complex point;
        if (mult == need) {
            point = -static_cast<double>(mult) / c;
        } else {
            const double theta = normalize_angle(-std::arg(c) - pi);
            point = std::polar(level, theta);
        }
        if (std::abs(point) < 1.0) continue;
        const Complex recip = 1.0 / point;
        for (long long i = 0; i < mult; ++i) {
            added.push_back(point);
            s_added += recip;
        }
        budget_used += mult;
    }

    out.added = PointSequence(std::move(added));
    out.residual_before = lindelof_sum(seq, rmax);
    out.residual_after = lindelof_sum(merge(seq, out.added), rmax);
    return out;
}

}  // namespace critype
