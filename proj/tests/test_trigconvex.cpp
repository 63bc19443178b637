#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "critype/trig_convex.hpp"
#include "support/oracles.hpp"

using critype::AngularMeasure;
using critype::pi;
using critype::Side;
using critype::TrigConvexFunction;
using critype::two_pi;
using Catch::Approx;

TEST_CASE("single atom gives a clipped sine") {
    const double phi = 1.0, mass = 0.5;
    TrigConvexFunction h(AngularMeasure({{phi, mass}}));
    CHECK(h(0.5) == 0.0);
    CHECK(h(phi) == Approx(0.0).margin(1e-15));
    CHECK(h(phi + 1.2) == Approx(two_pi * mass * std::sin(1.2)));
    CHECK(h(two_pi) == Approx(two_pi * mass * std::sin(two_pi - phi)));
}

TEST_CASE("density cell closed form matches its defining integral") {
    TrigConvexFunction h(AngularMeasure({}, {{0.5, 2.0, 0.3}}));
    for (double t : {0.2, 0.5, 0.9, 1.999, 2.0, 3.5, 6.0}) {
        // the integrand lives on the cell clipped at t; the limits carry the
        // restriction so the quadrature only ever sees a smooth function
        const double hi = std::min(2.0, t);
        double direct = 0.0;
        if (hi > 0.5)
            direct = critype::two_pi *
                     oracle::integrate(
                         [&](double phi) { return 0.3 * std::sin(t - phi); }, 0.5, hi);
        CHECK(h(t) == Approx(direct).margin(1e-7));
    }
}

TEST_CASE("random measures match quadrature everywhere") {
    std::mt19937_64 rng(911);
    for (int trial = 0; trial < 15; ++trial) {
        const auto m = oracle::random_mixed(rng);
        TrigConvexFunction h(m);
        for (double t : {0.0, 0.7, 1.9, 3.1, 4.4, 5.8, two_pi})
            CHECK(h(t) == Approx(oracle::h_quadrature(m, t)).margin(1e-7));
    }
}

TEST_CASE("linear part adds a pure sinusoid") {
    TrigConvexFunction h(AngularMeasure({{1.0, 1.0}}), 0.25, -0.5);
    TrigConvexFunction base(AngularMeasure({{1.0, 1.0}}));
    for (double t : {0.0, 1.3, 2.9, 5.0})
        CHECK(h(t) == Approx(base(t) + 0.25 * std::cos(t) - 0.5 * std::sin(t)));
    const auto shifted = base.add_linear(0.25, -0.5);
    CHECK(shifted(2.9) == Approx(h(2.9)));
}

TEST_CASE("domain is the closed period") {
    TrigConvexFunction h(AngularMeasure({{1.0, 1.0}}));
    CHECK_THROWS_AS(h(-0.1), critype::invalid_input);
    CHECK_THROWS_AS(h(two_pi + 0.1), critype::invalid_input);
    CHECK_THROWS_AS(h.derivative(-0.1, Side::left), critype::invalid_input);
}

TEST_CASE("derivative matches finite differences away from atoms") {
    std::mt19937_64 rng(913);
    for (int trial = 0; trial < 10; ++trial) {
        const auto m = oracle::random_mixed(rng);
        TrigConvexFunction h(m);
        for (double t : {1.1, 2.3, 4.0, 5.2}) {
            bool near_atom = false;
            for (const auto& a : m.atoms())
                near_atom = near_atom || std::abs(a.angle - t) < 1e-4;
            if (near_atom) continue;
            const double fd = oracle::central_diff([&](double u) { return h(u); }, t);
            CHECK(h.derivative(t, Side::right) == Approx(fd).margin(1e-5));
        }
    }
}

TEST_CASE("derivative jumps by 2 pi mass at an atom") {
    const double phi = 2.0, mass = 0.7;
    TrigConvexFunction h(AngularMeasure({{phi, mass}, {1.0, 0.3}}));
    const double jump = h.derivative(phi, Side::right) - h.derivative(phi, Side::left);
    CHECK(jump == Approx(two_pi * mass));
}

TEST_CASE("measure recovery over sectors") {
    std::mt19937_64 rng(917);
    for (int trial = 0; trial < 20; ++trial) {
        const auto m = oracle::random_mixed(rng);
        TrigConvexFunction h(m);
        std::uniform_real_distribution<double> cut(0.0, two_pi);
        double alpha = cut(rng), beta = cut(rng);
        if (alpha > beta) std::swap(alpha, beta);
        if (beta - alpha < 1e-3) continue;
        // closed-interval mass: sector plus any atoms at the endpoints
        double expect = m.sector_mass(alpha, beta);
        for (const auto& a : m.atoms())
            if (a.angle == alpha || a.angle == beta) expect += a.mass;
        CHECK(h.measure_between(alpha, beta) == Approx(expect).margin(1e-9));
    }
}

TEST_CASE("recovery sees the linear part as invisible") {
    AngularMeasure m({{1.0, 2.0}, {4.0, 1.0}});
    TrigConvexFunction h(m, 0.8, -1.7);
    CHECK(h.measure_between(0.5, 4.5) == Approx(3.0).margin(1e-9));
    CHECK(h.measure_between(2.0, 3.0) == Approx(0.0).margin(1e-9));
}

TEST_CASE("pure sinusoids have exactly zero defect") {
    auto sinusoid = [](double t) { return 1.3 * std::cos(t) - 0.4 * std::sin(t); };
    CHECK(critype::trig_defect(sinusoid, 0.3, 0.9, 1.8) == Approx(0.0).margin(1e-14));
    CHECK(critype::trig_defect(sinusoid, 4.0, 4.1, 6.0) == Approx(0.0).margin(1e-14));
}

TEST_CASE("defect stays nonpositive for measure-generated functions") {
    std::mt19937_64 rng(919);
    std::uniform_real_distribution<double> start(0.0, two_pi - 1.0);
    std::uniform_real_distribution<double> step(1e-3, 0.49);
    for (int trial = 0; trial < 200; ++trial) {
        const auto m = oracle::random_mixed(rng);
        TrigConvexFunction h(m);
        const double t1 = start(rng);
        const double t2 = t1 + step(rng);
        const double t3 = t2 + step(rng);
        const double scale = std::max({std::abs(h(t1)), std::abs(h(t2)), std::abs(h(t3)), 1.0});
        CHECK(critype::trig_defect(h, t1, t2, t3) <= 1e-9 * scale);
    }
}

TEST_CASE("a function that is not trig convex has positive defect") {
    // h(t) = -t fails: on (0, pi/4, pi/2) the expression is pi (sqrt 2 - 1) / 4 > 0
    auto h = [](double t) { return -t; };
    const double d = critype::trig_defect(h, 0.0, pi / 4, pi / 2);
    CHECK(d == Approx(pi * (std::sqrt(2.0) - 1.0) / 4));
    CHECK(d > 0.0);
}

TEST_CASE("defect rejects bad triples") {
    auto h = [](double t) { return t; };
    CHECK_THROWS_AS(critype::trig_defect(h, 1.0, 0.5, 2.0), critype::invalid_input);
    CHECK_THROWS_AS(critype::trig_defect(h, 0.0, 1.0, 3.5), critype::invalid_input);
}

TEST_CASE("support line carries the function value") {
    TrigConvexFunction h(AngularMeasure({{0.5, 1.0}, {3.0, 2.0}}));
    const auto line = h.support_line(2.0);
    CHECK(line.angle == 2.0);
    CHECK(line.offset == Approx(h(2.0)));
}
