#pragma once

#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "critype/angular_measure.hpp"
#include "critype/common.hpp"

namespace critype {

enum class Side { left, right };

// Support line of direction t: the set {x cos t + y sin t = offset}.
struct SupportLine {
    double angle = 0.0;
    double offset = 0.0;
};

namespace detail {

// 16-point Gauss-Legendre rule on [-1, 1]; nodes are +/- the listed values.
inline constexpr std::array<double, 8> gl16_nodes = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
inline constexpr std::array<double, 8> gl16_weights = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

template <class F>
double gauss16(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < gl16_nodes.size(); ++i) {
        const double d = half * gl16_nodes[i];
        s += gl16_weights[i] * (f(mid - d) + f(mid + d));
    }
    return s * half;
}

}  // namespace detail

// h(t) = 2*pi * integral over [0, t] of sin(t - phi) d(base)(phi)
//        + a*cos t + b*sin t,  for t in [0, 2*pi].
// The measure part is the canonical convex function generated by `base`; the
// linear part translates the associated convex body by (a, b).
class TrigConvexFunction {
    AngularMeasure base_;
    double a_ = 0.0;
    double b_ = 0.0;

public:
    explicit TrigConvexFunction(AngularMeasure base, double a = 0.0, double b = 0.0)
        : base_(std::move(base)), a_(a), b_(b) {
        if (!is_finite(a_) || !is_finite(b_))
            throw invalid_input("trig function: non-finite linear part");
    }

    const AngularMeasure& base() const { return base_; }
    double linear_cos() const { return a_; }
    double linear_sin() const { return b_; }

    double operator()(double t) const {
        check_domain(t);
        double s = 0.0;
        for (const auto& atom : base_.atoms()) {
            if (atom.angle > t) break;
            s += atom.mass * std::sin(t - atom.angle);
        }
        for (const auto& c : base_.density()) {
            if (c.lo >= t) break;
            const double u = std::min(c.hi, t);
            s += c.value * (std::cos(t - u) - std::cos(t - c.lo));
        }
        return two_pi * s + a_ * std::cos(t) + b_ * std::sin(t);
    }

    // One-sided derivative; the sides differ exactly at atom directions,
    // where the jump equals 2*pi times the atom mass.
    double derivative(double t, Side side) const {
        check_domain(t);
        double s = 0.0;
        for (const auto& atom : base_.atoms()) {
            if (atom.angle > t) break;
            if (atom.angle == t && side == Side::left) continue;
            s += atom.mass * std::cos(t - atom.angle);
        }
        for (const auto& c : base_.density()) {
            if (c.lo >= t) break;
            const double u = std::min(c.hi, t);
            s += c.value * (std::sin(t - c.lo) - std::sin(t - u));
        }
        return two_pi * s - a_ * std::sin(t) + b_ * std::cos(t);
    }

    // Mass the function assigns to [alpha, beta] by the derivative-jump
    // formula: (h'_+(beta) - h'_-(alpha) + integral of h) / (2*pi).
    // Atoms sitting exactly at either endpoint are included.
    double measure_between(double alpha, double beta) const {
        if (!(alpha >= 0.0 && alpha < beta && beta <= two_pi))
            throw invalid_input("measure_between: need 0 <= alpha < beta <= 2*pi");
        double integral = 0.0;
        double left = alpha;
        for (double cut : breakpoints(alpha, beta)) {
            integral += detail::gauss16([this](double t) { return (*this)(t); }, left, cut);
            left = cut;
        }
        integral += detail::gauss16([this](double t) { return (*this)(t); }, left, beta);
        return (derivative(beta, Side::right) - derivative(alpha, Side::left) + integral) / two_pi;
    }

    TrigConvexFunction add_linear(double da, double db) const {
        return TrigConvexFunction(base_, a_ + da, b_ + db);
    }

    SupportLine support_line(double t) const { return {t, (*this)(t)}; }

private:
    void check_domain(double t) const {
        if (!(t >= 0.0 && t <= two_pi))
            throw invalid_input("trig function: argument outside [0, 2*pi]");
    }

    // Sorted interior breakpoints of (alpha, beta) where the closed form
    // changes branch: atom directions and density cell endpoints.
    std::vector<double> breakpoints(double alpha, double beta) const {
        std::vector<double> cuts;
        for (const auto& atom : base_.atoms())
            if (atom.angle > alpha && atom.angle < beta) cuts.push_back(atom.angle);
        for (const auto& c : base_.density()) {
            if (c.lo > alpha && c.lo < beta) cuts.push_back(c.lo);
            if (c.hi > alpha && c.hi < beta) cuts.push_back(c.hi);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        return cuts;
    }
};

// Convexity expression for an ordered triple with span below pi:
//   h(t1) sin(t2-t3) + h(t2) sin(t3-t1) + h(t3) sin(t1-t2).
// Nonpositive values mean the triple is consistent with convexity.
template <class F>
double trig_defect(F&& h, double t1, double t2, double t3) {
    if (!(t1 < t2 && t2 < t3))
        throw invalid_input("trig_defect: need t1 < t2 < t3");
    if (!(t3 - t1 < pi))
        throw invalid_input("trig_defect: triple must span less than pi");
    return h(t1) * std::sin(t2 - t3) + h(t2) * std::sin(t3 - t1) +
           h(t3) * std::sin(t1 - t2);
}

}  // namespace critype
