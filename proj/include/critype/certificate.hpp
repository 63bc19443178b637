#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "critype/angular_measure.hpp"
#include "critype/common.hpp"
#include "critype/geometry.hpp"
#include "critype/point_sequence.hpp"
#include "critype/trig_convex.hpp"

namespace critype {

// Nonnegative trigonometrically convex test function built from the contact
// structure of the enclosing circle. It vanishes on an arc (containing the
// zero direction when one was anchored) and pairs against the balanced
// measure to recover the circle data.
class CertificateFunction {
public:
    // Piece amp * sin(u - lo) ... expressed on the unwrapped coordinate
    // u = ccw arc from ref_; each piece is amp * sin of the distance to the
    // arc end where it vanishes.
    struct Piece {
        double lo, hi;   // u-interval, 0 <= lo < hi, hi - lo < pi
        double amp;
        bool from_lo;    // true: amp*sin(u-lo); false: amp*sin(hi-u)
    };

private:
    ContactCase kind_;
    double ref_ = 0.0;               // mu_1, start of the support arc
    double radius_ = 0.0;            // enclosing radius (area identity, case 1)
    std::vector<Piece> pieces_;
    std::vector<Complex> polar_;     // case 2 only: N_1, N_2, N_3
    std::vector<double> args_;       // contact arguments mu_1..mu_k

    CertificateFunction() = default;

public:
    static CertificateFunction from_classification(const ContactClassification& cls) {
        CertificateFunction k;
        k.kind_ = cls.kind;
        k.radius_ = cls.radius;
        k.args_ = cls.contact_args;
        k.ref_ = cls.contact_args.front();
        if (cls.kind == ContactCase::diametral_pair) {
            k.pieces_.push_back({0.0, pi, 1.0, true});
        } else {
            k.polar_.assign(cls.polar.begin(), cls.polar.end());
            const double L2 = ccw_arc(cls.contact_args[0], cls.contact_args[1]);
            const double L3 = ccw_arc(cls.contact_args[1], cls.contact_args[2]);
            const double d2 = std::abs(cls.polar[1] - cls.polar[0]);
            const double d3 = std::abs(cls.polar[2] - cls.polar[0]);
            k.pieces_.push_back({0.0, L2, d2, true});
            k.pieces_.push_back({L2, L2 + L3, d3, false});
        }
        return k;
    }

    ContactCase kind() const { return kind_; }
    double radius() const { return radius_; }
    const std::vector<double>& contact_args() const { return args_; }
    const std::vector<Complex>& polar_vertices() const { return polar_; }

    double operator()(double theta) const {
        const double u = ccw_arc(ref_, theta);
        double v = 0.0;
        for (const auto& p : pieces_)
            if (u >= p.lo && u <= p.hi)
                v = std::max(v, p.amp * std::sin(p.from_lo ? u - p.lo : p.hi - u));
        return v;
    }

    // Integral over the angular interval [lo, hi] (theta coordinates, hi - lo
    // <= 2*pi), in closed form.
    double integral(double lo, double hi) const {
        if (!(hi >= lo && hi - lo <= two_pi + 1e-12))
            throw invalid_input("certificate integral: bad interval");
        const double u0 = ccw_arc(ref_, lo);
        const double len = hi - lo;
        double total = integral_u(u0, std::min(u0 + len, two_pi));
        if (u0 + len > two_pi) total += integral_u(0.0, u0 + len - two_pi);
        return total;
    }

    // Total variation of the derivative over one period divided by ... the
    // mass of the representing measure: 1/pi for a diametral pair, the polar
    // triangle perimeter over 2*pi for a contact triangle.
    double total_variation() const {
        if (kind_ == ContactCase::diametral_pair) return 1.0 / pi;
        double perim = 0.0;
        for (int i = 0; i < 3; ++i) perim += std::abs(polar_[(i + 1) % 3] - polar_[i]);
        return perim / two_pi;
    }

    double max_value() const {
        double m = 0.0;
        for (const auto& p : pieces_) m = std::max(m, p.amp * std::sin(std::min(p.hi - p.lo, pi / 2)));
        return m;
    }

    // The same function as a trigonometrically convex object: representing
    // measure (support-arc endpoint masses) plus the sinusoid part fixed by
    // matching values at 0 and pi/2.
    TrigConvexFunction as_trig_convex() const {
        std::vector<Atom> atoms;
        if (kind_ == ContactCase::diametral_pair) {
            atoms.push_back({ref_, 1.0 / two_pi});
            atoms.push_back({normalize_angle(ref_ + pi), 1.0 / two_pi});
        } else {
            for (int i = 0; i < 3; ++i) {
                const double edge = std::abs(polar_[(i + 1) % 3] - polar_[i]);
                atoms.push_back({args_[static_cast<std::size_t>(i)], edge / two_pi});
            }
        }
        AngularMeasure rep(std::move(atoms), {});
        TrigConvexFunction h(rep, 0.0, 0.0);
        const double a = (*this)(0.0) - h(0.0);
        const double b = (*this)(pi / 2) - h(pi / 2);
        return h.add_linear(a, b);
    }

private:
    double integral_u(double a, double b) const {
        double s = 0.0;
        for (const auto& p : pieces_) {
            const double lo = std::max(a, p.lo), hi = std::min(b, p.hi);
            if (hi <= lo) continue;
            if (p.from_lo)
                s += p.amp * (std::cos(lo - p.lo) - std::cos(hi - p.lo));
            else
                s += p.amp * (std::cos(p.hi - hi) - std::cos(p.hi - lo));
        }
        return s;
    }
};

// Integral of k against the measure: atom masses times point values plus
// density values times closed-form arc integrals.
inline double pairing(const AngularMeasure& m, const CertificateFunction& k) {
    CompensatedSum s;
    for (const auto& a : m.atoms()) s.add(a.mass * k(a.angle));
    for (const auto& c : m.density()) s.add(c.value * k.integral(c.lo, c.hi));
    return s.value();
}

struct AreaIdentity {
    double lhs = 0.0;  // pi times the pairing against the balanced measure
    double rhs = 0.0;  // enclosing radius (pair) or polar triangle area (triple)
    bool holds = false;
};

// pi * <k, star> equals the radius for a diametral pair and the polar
// triangle area for a contact triangle.
inline AreaIdentity verify_area_identity(const AngularMeasure& star,
                                         const CertificateFunction& k,
                                         double rel_tol = 1e-9) {
    AreaIdentity out;
    out.lhs = pi * pairing(star, k);
    if (k.kind() == ContactCase::diametral_pair) {
        out.rhs = k.radius();
    } else {
        const auto& n = k.polar_vertices();
        double twice = 0.0;
        for (int i = 0; i < 3; ++i) {
            const Complex &p = n[i], &q = n[(i + 1) % 3];
            twice += p.real() * q.imag() - p.imag() * q.real();
        }
        out.rhs = std::abs(twice) / 2.0;
    }
    out.holds = std::abs(out.lhs - out.rhs) <= rel_tol * std::max(1.0, std::abs(out.rhs));
    return out;
}

// Truncated logarithmic pairing of a point sequence against k:
// (1/log R) * sum over moduli <= R of k(arg) * (1/|lambda| - 1/R).
inline double gs_lhs(const PointSequence& seq, const CertificateFunction& k,
                     double R) {
    if (!(R > 1.0)) throw invalid_input("gs_lhs: R must exceed 1");
    if (!seq.empty() && !(R <= seq.max_modulus() * 1.01))
        throw invalid_input("gs_lhs: R beyond the sequence truncation");
    CompensatedSum s;
    for (const auto& p : seq.points()) {
        const double r = std::abs(p);
        if (r > R) break;
        s.add(k(normalize_angle(std::arg(p))) * (1.0 / r - 1.0 / R));
    }
    return s.value() / std::log(R);
}

inline double gs_rhs(double sigma, const CertificateFunction& k) {
    if (!(sigma >= 0.0)) throw invalid_input("gs_rhs: sigma must be nonnegative");
    return sigma * k.total_variation();
}

struct CertifyReport {
    double sigma = 0.0;
    double sigma_u = 0.0;
    double lhs = 0.0;     // pairing of the certificate against the balanced measure
    double rhs = 0.0;     // sigma times the certificate total variation
    double margin = 0.0;  // lhs - rhs; positive certifies uniqueness
    bool certified = false;
    std::optional<ContactCase> kind;
};

// Decide sigma against the critical type by the certificate inequality. The
// margin is an affine function of sigma with its root exactly at sigma_u.
inline CertifyReport uniqueness_margin(const AngularMeasure& m, double sigma,
                                       const AnalysisOptions& opts = {}) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw invalid_input("uniqueness_margin: sigma must be a finite nonnegative number");
    CertifyReport rep;
    rep.sigma = sigma;
    const AnalysisReport analysis = critical_type(m, opts);
    rep.sigma_u = analysis.sigma_u;
    if (!analysis.classification) return rep;  // degenerate: nothing to certify
    const auto k = CertificateFunction::from_classification(*analysis.classification);
    rep.kind = analysis.classification->kind;
    rep.lhs = pairing(analysis.star, k);
    rep.rhs = gs_rhs(sigma, k);
    rep.margin = rep.lhs - rep.rhs;
    rep.certified = rep.margin > 0.0;
    return rep;
}

}  // namespace critype
