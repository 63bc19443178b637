#pragma once

#include <algorithm>
#include <complex>
#include <utility>
#include <vector>

#include "critype/common.hpp"

namespace critype {

// Point mass sitting at a single direction.
struct Atom {
    double angle = 0.0;  // in [0, 2*pi)
    double mass = 0.0;   // > 0
};

// Constant angular density `value` (mass per radian) on the half-open
// interval [lo, hi) with 0 <= lo < hi <= 2*pi.
struct DensityCell {
    double lo = 0.0;
    double hi = 0.0;
    double value = 0.0;
};

// Result of balancing a measure's first trigonometric moment.
struct BalancingAtom {
    double amplitude = 0.0;  // A0 >= 0
    double angle = 0.0;      // alpha0 in [0, 2*pi)
    bool balanced = false;   // true when A0 fell below the moment tolerance
};

// Finite nonnegative measure on directions [0, 2*pi): a list of atoms plus a
// piecewise-constant density. Immutable after construction; construction
// normalizes angles, merges duplicate atom directions, drops negligible atoms
// (mass below 1e-15 of the total) and keeps both parts sorted.
class AngularMeasure {
    std::vector<Atom> atoms_;
    std::vector<DensityCell> density_;

public:
    AngularMeasure() = default;

    explicit AngularMeasure(std::vector<Atom> atoms,
                            std::vector<DensityCell> density = {}) {
        for (auto& a : atoms) {
            if (!is_finite(a.angle) || !is_finite(a.mass))
                throw invalid_input("measure: non-finite atom");
            if (a.mass < 0.0)
                throw invalid_input("measure: negative atom mass");
            a.angle = normalize_angle(a.angle);
        }
        for (const auto& c : density) {
            if (!is_finite(c.lo) || !is_finite(c.hi) || !is_finite(c.value))
                throw invalid_input("measure: non-finite density cell");
            if (c.value < 0.0)
                throw invalid_input("measure: negative density value");
            if (c.lo < 0.0 || c.hi > two_pi || !(c.lo < c.hi))
                throw invalid_input("measure: density cell outside [0, 2*pi) or empty");
        }

        std::sort(atoms.begin(), atoms.end(),
                  [](const Atom& x, const Atom& y) { return x.angle < y.angle; });
        for (const auto& a : atoms) {
            if (a.mass == 0.0) continue;
            if (!atoms_.empty() && atoms_.back().angle == a.angle)
                atoms_.back().mass += a.mass;
            else
                atoms_.push_back(a);
        }

        for (const auto& c : density)
            if (c.value > 0.0) density_.push_back(c);
        std::sort(density_.begin(), density_.end(),
                  [](const DensityCell& x, const DensityCell& y) { return x.lo < y.lo; });
        for (std::size_t i = 1; i < density_.size(); ++i)
            if (density_[i].lo < density_[i - 1].hi)
                throw invalid_input("measure: overlapping density cells");

        const double total = raw_total();
        if (total > 0.0) {
            const double cutoff = 1e-15 * total;
            std::erase_if(atoms_, [&](const Atom& a) { return a.mass < cutoff; });
        }
    }

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<DensityCell>& density() const { return density_; }

    bool purely_atomic() const { return density_.empty(); }
    bool is_zero() const { return atoms_.empty() && density_.empty(); }

    double total_mass() const { return raw_total(); }

    // Mass of the open sector (alpha, beta): atoms strictly inside plus the
    // density of the overlap. Requires 0 <= alpha < beta <= 2*pi.
    double sector_mass(double alpha, double beta) const {
        if (!(alpha >= 0.0 && alpha < beta && beta <= two_pi))
            throw invalid_input("sector_mass: need 0 <= alpha < beta <= 2*pi");
        double m = 0.0;
        for (const auto& a : atoms_)
            if (a.angle > alpha && a.angle < beta) m += a.mass;
        for (const auto& c : density_) {
            const double lo = std::max(c.lo, alpha);
            const double hi = std::min(c.hi, beta);
            if (hi > lo) m += c.value * (hi - lo);
        }
        return m;
    }

    // First trigonometric moment: integral of e^{i t} over the measure.
    Complex first_moment() const {
        Complex m{0.0, 0.0};
        for (const auto& a : atoms_)
            m += a.mass * std::polar(1.0, a.angle);
        for (const auto& c : density_) {
            // integral of e^{i t} over [lo, hi) = (e^{i hi} - e^{i lo}) / i
            const Complex d = std::polar(1.0, c.hi) - std::polar(1.0, c.lo);
            m += c.value * Complex(d.imag(), -d.real());
        }
        return m;
    }

    // Tolerance used throughout for "moment is zero" decisions.
    double moment_tolerance() const {
        return 1e-9 * std::max(1.0, total_mass());
    }

    // Smallest single atom whose addition cancels the first moment.
    BalancingAtom balancing_atom() const {
        const Complex m = first_moment();
        const double amp = std::abs(m);
        if (amp <= moment_tolerance()) return {0.0, 0.0, true};
        return {amp, normalize_angle(std::arg(-m)), false};
    }

    // The measure plus its balancing atom; first moment of the result is zero
    // up to roundoff.
    AngularMeasure star() const {
        const BalancingAtom b = balancing_atom();
        if (b.balanced) return *this;
        std::vector<Atom> atoms = atoms_;
        atoms.push_back({b.angle, b.amplitude});
        return AngularMeasure(std::move(atoms), density_);
    }

    // Rotation by s: every direction shifted, wrap-around cells split.
    AngularMeasure rotated(double s) const {
        std::vector<Atom> atoms = atoms_;
        for (auto& a : atoms) a.angle = normalize_angle(a.angle + s);
        std::vector<DensityCell> cells;
        for (const auto& c : density_) {
            const double lo = normalize_angle(c.lo + s);
            const double len = c.hi - c.lo;
            if (lo + len <= two_pi) {
                cells.push_back({lo, lo + len, c.value});
            } else {
                cells.push_back({lo, two_pi, c.value});
                cells.push_back({0.0, lo + len - two_pi, c.value});
            }
        }
        return AngularMeasure(std::move(atoms), std::move(cells));
    }

private:
    double raw_total() const {
        double t = 0.0;
        for (const auto& a : atoms_) t += a.mass;
        for (const auto& c : density_) t += c.value * (c.hi - c.lo);
        return t;
    }
};

}  // namespace critype
