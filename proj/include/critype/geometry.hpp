#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "critype/angular_measure.hpp"
#include "critype/common.hpp"

namespace critype {

namespace detail {

inline double cross(const Complex& o, const Complex& a, const Complex& b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

inline bool lex_less(const Complex& p, const Complex& q) {
    return p.real() < q.real() || (p.real() == q.real() && p.imag() < q.imag());
}

}  // namespace detail

// Convex polygon stored as extreme vertices in counterclockwise order,
// starting at the lexicographically smallest vertex. Degenerate bodies
// (a point, a segment) are permitted.
class ConvexBody {
    std::vector<Complex> verts_;

    explicit ConvexBody(std::vector<Complex> verts, int) : verts_(std::move(verts)) {}

public:
    ConvexBody() = default;

    // Convex hull of an arbitrary point set (Andrew monotone chain; exact
    // duplicates removed, collinear interior points dropped).
    static ConvexBody from_points(std::span<const Complex> points) {
        std::vector<Complex> pts(points.begin(), points.end());
        for (const auto& p : pts)
            if (!is_finite(p)) throw invalid_input("convex body: non-finite point");
        if (pts.empty()) throw invalid_input("convex body: no points");
        std::sort(pts.begin(), pts.end(), detail::lex_less);
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        if (pts.size() <= 2) return ConvexBody(std::move(pts), 0);

        std::vector<Complex> hull(2 * pts.size());
        std::size_t k = 0;
        for (const auto& p : pts) {
            while (k >= 2 && detail::cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
            hull[k++] = p;
        }
        const std::size_t lower = k + 1;
        for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
            while (k >= lower && detail::cross(hull[k - 2], hull[k - 1], *it) <= 0.0) --k;
            hull[k++] = *it;
        }
        hull.resize(k - 1);  // last point repeats the first
        return ConvexBody(std::move(hull), 0);
    }

    const std::vector<Complex>& vertices() const { return verts_; }
    std::size_t size() const { return verts_.size(); }
    bool is_point() const { return verts_.size() == 1; }
    bool is_segment() const { return verts_.size() == 2; }

    // Boundary length; a segment's boundary runs along both sides.
    double perimeter() const {
        if (verts_.size() < 2) return 0.0;
        if (verts_.size() == 2) return 2.0 * std::abs(verts_[1] - verts_[0]);
        double p = 0.0;
        for (std::size_t i = 0; i < verts_.size(); ++i)
            p += std::abs(verts_[(i + 1) % verts_.size()] - verts_[i]);
        return p;
    }

    // Translation preserves hull structure and the canonical start vertex.
    ConvexBody translated(const Complex& d) const {
        std::vector<Complex> v = verts_;
        for (auto& p : v) p += d;
        return ConvexBody(std::move(v), 0);
    }
};

struct Circle {
    Complex center{0.0, 0.0};
    double radius = 0.0;

    bool contains(const Complex& p, double slack) const {
        return std::abs(p - center) <= radius + slack;
    }
};

namespace detail {

inline Circle circle_from_2(const Complex& a, const Complex& b) {
    const Complex c = 0.5 * (a + b);
    return {c, std::abs(a - c)};
}

// Circumcircle; falls back to the widest pair for a collinear triple.
inline Circle circle_from_3(const Complex& a, const Complex& b, const Complex& c) {
    const double ax = a.real(), ay = a.imag();
    const double bx = b.real(), by = b.imag();
    const double cx = c.real(), cy = c.imag();
    const double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    const double scale = std::max({std::abs(a - b), std::abs(b - c), std::abs(c - a)});
    if (std::abs(d) <= 1e-14 * scale * scale) {
        Circle best = circle_from_2(a, b);
        for (const Circle& cand : {circle_from_2(b, c), circle_from_2(a, c)})
            if (cand.radius > best.radius) best = cand;
        return best;
    }
    const double a2 = ax * ax + ay * ay;
    const double b2 = bx * bx + by * by;
    const double c2 = cx * cx + cy * cy;
    const Complex center((a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d,
                         (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d);
    const double r = std::max({std::abs(a - center), std::abs(b - center),
                               std::abs(c - center)});
    return {center, r};
}

inline double mec_slack(const Circle& c) {
    return 1e-12 * (1.0 + c.radius + std::abs(c.center));
}

}  // namespace detail

// Smallest circle containing all points. Randomized incremental construction
// with a fixed shuffle seed; canonical pre-sort makes the result independent
// of the input order.
inline Circle minimum_enclosing_circle(std::span<const Complex> points) {
    std::vector<Complex> pts(points.begin(), points.end());
    if (pts.empty()) throw invalid_input("enclosing circle: no points");
    for (const auto& p : pts)
        if (!is_finite(p)) throw invalid_input("enclosing circle: non-finite point");
    std::sort(pts.begin(), pts.end(), detail::lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::mt19937_64 rng(0x51cc5d73e4f1a9d1ULL);
    std::shuffle(pts.begin(), pts.end(), rng);

    Circle c{pts[0], 0.0};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (c.contains(pts[i], detail::mec_slack(c))) continue;
        c = {pts[i], 0.0};
        for (std::size_t j = 0; j < i; ++j) {
            if (c.contains(pts[j], detail::mec_slack(c))) continue;
            c = detail::circle_from_2(pts[i], pts[j]);
            for (std::size_t k = 0; k < j; ++k) {
                if (c.contains(pts[k], detail::mec_slack(c))) continue;
                c = detail::circle_from_3(pts[i], pts[j], pts[k]);
            }
        }
    }
    return c;
}

// Boundary polygon of a purely atomic balanced measure: each atom (alpha, A)
// contributes an edge of length 2*pi*A with outward normal alpha; walking the
// atoms in angle order closes the polygon exactly when the first moment
// vanishes.
inline ConvexBody polygon_from_atoms(const AngularMeasure& m) {
    if (!m.purely_atomic())
        throw invalid_input("polygon_from_atoms: measure has a density part");
    if (std::abs(m.first_moment()) > m.moment_tolerance())
        throw computation_error("polygon_from_atoms: nonzero first moment, boundary does not close");
    std::vector<Complex> chain{Complex{0.0, 0.0}};
    for (const auto& atom : m.atoms()) {
        const Complex e = std::polar(1.0, atom.angle);
        chain.push_back(chain.back() + two_pi * atom.mass * Complex(-e.imag(), e.real()));
    }
    if (chain.size() > 1) chain.pop_back();  // closure point duplicates the origin
    return ConvexBody::from_points(chain);
}

// Boundary of the body generated by a balanced measure with a density part,
// sampled at `grid` support angles refined by every atom direction and cell
// endpoint (both sides of each atom jump). The hull is inscribed: vertices
// are exact boundary points.
inline ConvexBody body_from_measure(const AngularMeasure& m, int grid) {
    if (grid < 3) throw invalid_input("body_from_measure: grid must be at least 3");
    if (std::abs(m.first_moment()) > m.moment_tolerance())
        throw computation_error("body_from_measure: nonzero first moment");
    if (m.purely_atomic()) return polygon_from_atoms(m);

    std::vector<double> angles;
    angles.reserve(static_cast<std::size_t>(grid) + 2 * m.atoms().size() +
                   2 * m.density().size());
    for (int k = 0; k < grid; ++k)
        angles.push_back(two_pi * static_cast<double>(k) / static_cast<double>(grid));
    for (const auto& a : m.atoms()) angles.push_back(a.angle);
    for (const auto& c : m.density()) {
        angles.push_back(c.lo);
        if (c.hi < two_pi) angles.push_back(c.hi);
    }
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end()), angles.end());

    // Atom prefix positions accumulated sequentially, matching the walk in
    // polygon_from_atoms term for term.
    std::vector<Complex> prefix{Complex{0.0, 0.0}};
    for (const auto& atom : m.atoms()) {
        const Complex e = std::polar(1.0, atom.angle);
        prefix.push_back(prefix.back() + two_pi * atom.mass * Complex(-e.imag(), e.real()));
    }
    const auto& atoms = m.atoms();
    auto density_part = [&](double eta) {
        Complex s{0.0, 0.0};
        for (const auto& c : m.density()) {
            if (c.lo >= eta) break;
            const double u = std::min(c.hi, eta);
            s += two_pi * c.value * (std::polar(1.0, u) - std::polar(1.0, c.lo));
        }
        return s;
    };

    std::vector<Complex> samples;
    samples.reserve(2 * angles.size());
    for (double eta : angles) {
        const auto below = static_cast<std::size_t>(
            std::lower_bound(atoms.begin(), atoms.end(), eta,
                             [](const Atom& a, double v) { return a.angle < v; }) -
            atoms.begin());
        const auto at_or_below = static_cast<std::size_t>(
            std::upper_bound(atoms.begin(), atoms.end(), eta,
                             [](double v, const Atom& a) { return v < a.angle; }) -
            atoms.begin());
        const Complex dens = density_part(eta);
        samples.push_back(prefix[below] + dens);
        if (at_or_below != below) samples.push_back(prefix[at_or_below] + dens);
    }

    // The walk ends where it began up to the moment tolerance; snap stray
    // closure samples onto the start point so they cannot seed a phantom edge.
    const double snap = two_pi * m.moment_tolerance() + 1e-12;
    const Complex start = samples.front();
    std::vector<Complex> kept;
    kept.reserve(samples.size());
    kept.push_back(start);
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (samples[i] == start || std::abs(samples[i] - start) > snap)
            kept.push_back(samples[i]);
    return ConvexBody::from_points(kept);
}

// Translate a body so its circumcenter sits at the origin; the returned
// offset is the translation that was applied.
inline std::pair<ConvexBody, Complex> recenter(const ConvexBody& body) {
    const Circle c = minimum_enclosing_circle(body.vertices());
    const Complex offset = -c.center;
    return {body.translated(offset), offset};
}

// Vertex lying on the circumcircle, keyed by its argument seen from the
// circle center.
struct Contact {
    double mu = 0.0;
    Complex point{0.0, 0.0};
};

// Vertices within tol * radius of the circle, sorted by argument.
inline std::vector<Contact> contact_set(const ConvexBody& body, const Circle& circle,
                                        double tol) {
    if (circle.radius <= 0.0)
        throw invalid_input("contact_set: circle radius must be positive");
    std::vector<Contact> out;
    for (const auto& v : body.vertices()) {
        const Complex rel = v - circle.center;
        if (std::abs(std::abs(rel) - circle.radius) <= tol * circle.radius)
            out.push_back({normalize_angle(std::arg(rel)), v});
    }
    std::sort(out.begin(), out.end(),
              [](const Contact& a, const Contact& b) { return a.mu < b.mu; });
    if (out.size() < 2)
        throw computation_error("contact_set: fewer than two contacts, inconsistent enclosing circle");
    return out;
}

enum class ContactCase {
    diametral_pair,   // two contacts pi apart
    contact_triangle  // three contacts whose triangle strictly contains the center
};

// Tangent-line intersection for the counterclockwise arc from mu_a to mu_b.
inline Complex tangent_intersection(double mu_a, double mu_b, double radius) {
    const double arc = ccw_arc(mu_a, mu_b);
    if (arc >= pi - 1e-9)
        throw computation_error("tangent_intersection: arc of at least pi, tangents do not meet");
    return (radius / std::cos(0.5 * arc)) * std::polar(1.0, mu_a + 0.5 * arc);
}

// Polar triangle of a contact triple: N1 spans the arc [mu3, mu1] (the arc
// carrying no contact), N2 spans [mu1, mu2], N3 spans [mu2, mu3]. Vertices
// N2, N3, N1 follow each other counterclockwise.
inline std::array<Complex, 3> polar_triangle(double mu1, double mu2, double mu3,
                                             double radius) {
    return {tangent_intersection(mu3, mu1, radius),
            tangent_intersection(mu1, mu2, radius),
            tangent_intersection(mu2, mu3, radius)};
}

struct ContactClassification {
    ContactCase kind = ContactCase::diametral_pair;
    // Case diametral_pair: {mu1, mu1 + pi}. Case contact_triangle: the three
    // contact arguments in counterclockwise order starting at mu1; the closed
    // arc from the last argument back to mu1 carries no contact and contains
    // the balancing direction whenever one was supplied.
    std::vector<double> contact_args;
    std::vector<Complex> contact_points;
    std::array<Complex, 3> polar{};  // contact_triangle only
    double radius = 0.0;
};

// Decide the contact structure of a circumscribed body: either a pair of
// contacts pi apart (within diam_tol) or, failing that, the contact triple
// that strictly surrounds the center with the most even arc gaps. When
// `zero_direction` is given (the balancing direction), labels are rotated so
// the certificate built from the classification vanishes there.
inline ContactClassification classify(const std::vector<Contact>& contacts,
                                      const Circle& circle,
                                      std::optional<double> zero_direction = {},
                                      double diam_tol = 1e-7) {
    if (contacts.size() < 2)
        throw invalid_input("classify: need at least two contacts");
    ContactClassification cls;
    cls.radius = circle.radius;

    for (std::size_t i = 0; i < contacts.size(); ++i) {
        for (std::size_t j = i + 1; j < contacts.size(); ++j) {
            if (std::abs((contacts[j].mu - contacts[i].mu) - pi) > diam_tol) continue;
            std::size_t lead = i, trail = j;
            if (zero_direction &&
                !on_closed_arc(*zero_direction, normalize_angle(contacts[i].mu + pi),
                               contacts[i].mu))
                std::swap(lead, trail);
            cls.kind = ContactCase::diametral_pair;
            cls.contact_args = {contacts[lead].mu, normalize_angle(contacts[lead].mu + pi)};
            cls.contact_points = {contacts[lead].point, contacts[trail].point};
            return cls;
        }
    }

    double best_gap = -1.0;
    std::array<std::size_t, 3> best{};
    for (std::size_t i = 0; i < contacts.size(); ++i) {
        for (std::size_t j = i + 1; j < contacts.size(); ++j) {
            for (std::size_t k = j + 1; k < contacts.size(); ++k) {
                const double g1 = contacts[j].mu - contacts[i].mu;
                const double g2 = contacts[k].mu - contacts[j].mu;
                const double g3 = two_pi - (contacts[k].mu - contacts[i].mu);
                if (g1 >= pi || g2 >= pi || g3 >= pi) continue;
                const double gap = std::min({g1, g2, g3});
                if (gap > best_gap) {
                    best_gap = gap;
                    best = {i, j, k};
                }
            }
        }
    }
    if (best_gap < 0.0)
        throw computation_error("classify: no diametral pair and no surrounding triple; "
                                "contact tolerance too tight for this body");

    std::array<std::size_t, 3> order = best;  // ascending arguments
    if (zero_direction) {
        const double m0 = contacts[best[0]].mu;
        const double m1 = contacts[best[1]].mu;
        const double m2 = contacts[best[2]].mu;
        if (on_closed_arc(*zero_direction, m2, m0))
            order = {best[0], best[1], best[2]};
        else if (on_closed_arc(*zero_direction, m0, m1))
            order = {best[1], best[2], best[0]};
        else
            order = {best[2], best[0], best[1]};
    }

    cls.kind = ContactCase::contact_triangle;
    for (std::size_t idx : order) {
        cls.contact_args.push_back(contacts[idx].mu);
        cls.contact_points.push_back(contacts[idx].point);
    }
    cls.polar = polar_triangle(cls.contact_args[0], cls.contact_args[1],
                               cls.contact_args[2], circle.radius);
    return cls;
}

struct AnalysisOptions {
    int grid = 720;               // sampling resolution for density measures
    double contact_tol = 1e-9;    // relative distance-to-circle tolerance
    double diametral_tol = 1e-7;  // radians; opposite-pair detection
};

struct AnalysisReport {
    double sigma_u = 0.0;  // circumradius of the balanced body
    Circle circle;         // centered at the origin
    Complex offset{0.0, 0.0};
    ConvexBody body;  // recentered
    AngularMeasure star;
    BalancingAtom balancing;
    std::optional<ContactClassification> classification;
    std::vector<std::string> warnings;
};

// Full pipeline: balance the measure, build its body, recenter on the
// circumcircle, classify the contact structure.
inline AnalysisReport critical_type(const AngularMeasure& m,
                                    const AnalysisOptions& opts = {}) {
    AnalysisReport rep;
    rep.balancing = m.balancing_atom();
    rep.star = m.star();
    const ConvexBody raw = rep.star.purely_atomic()
                               ? polygon_from_atoms(rep.star)
                               : body_from_measure(rep.star, opts.grid);
    const Circle c = minimum_enclosing_circle(raw.vertices());
    rep.offset = -c.center;
    rep.body = raw.translated(rep.offset);
    rep.circle = {Complex{0.0, 0.0}, c.radius};
    rep.sigma_u = c.radius;
    if (rep.body.is_point()) return rep;  // zero measure: empty-type space

    const auto contacts = contact_set(rep.body, rep.circle, opts.contact_tol);
    std::optional<double> anchor;
    if (!rep.balancing.balanced) anchor = rep.balancing.angle;
    rep.classification = classify(contacts, rep.circle, anchor, opts.diametral_tol);

    for (const auto& atom : rep.star.atoms()) {
        for (double mu : rep.classification->contact_args) {
            const double d = std::abs(normalize_angle(atom.angle - mu + pi) - pi);
            if (d <= opts.diametral_tol && atom.mass > rep.star.moment_tolerance()) {
                rep.warnings.push_back("atom of the balanced measure sits at a contact argument");
                break;
            }
        }
    }
    return rep;
}

}  // namespace critype
