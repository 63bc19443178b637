#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "critype/angular_measure.hpp"
#include "support/oracles.hpp"

using critype::AngularMeasure;
using critype::Atom;
using critype::DensityCell;
using critype::pi;
using critype::two_pi;
using Catch::Approx;

TEST_CASE("construction validates input") {
    CHECK_THROWS_AS(AngularMeasure({{0.0, -1.0}}), critype::invalid_input);
    CHECK_THROWS_AS(AngularMeasure({{std::nan(""), 1.0}}), critype::invalid_input);
    CHECK_THROWS_AS(AngularMeasure({}, {{-0.1, 1.0, 0.5}}), critype::invalid_input);
    CHECK_THROWS_AS(AngularMeasure({}, {{0.0, two_pi + 0.1, 0.5}}), critype::invalid_input);
    CHECK_THROWS_AS(AngularMeasure({}, {{1.0, 1.0, 0.5}}), critype::invalid_input);
    CHECK_THROWS_AS(AngularMeasure({}, {{2.0, 1.0, 0.5}}), critype::invalid_input);
    CHECK_THROWS_AS(AngularMeasure({}, {{0.0, 1.0, -0.5}}), critype::invalid_input);
    CHECK_THROWS_AS(AngularMeasure({}, {{0.0, 2.0, 0.5}, {1.5, 3.0, 0.5}}),
                    critype::invalid_input);
}

TEST_CASE("angles normalize and duplicates merge") {
    AngularMeasure m({{two_pi, 1.0}, {-pi / 2, 2.0}, {0.0, 3.0}});
    REQUIRE(m.atoms().size() == 2);
    CHECK(m.atoms()[0].angle == 0.0);
    CHECK(m.atoms()[0].mass == 4.0);  // two_pi folds onto 0
    CHECK(m.atoms()[1].angle == Approx(3 * pi / 2));
    CHECK(m.atoms()[1].mass == 2.0);
}

TEST_CASE("zero-mass atoms and zero-value cells disappear") {
    AngularMeasure m({{1.0, 0.0}}, {{0.0, 1.0, 0.0}});
    CHECK(m.is_zero());
    CHECK(m.total_mass() == 0.0);
    CHECK(m.purely_atomic());
}

TEST_CASE("negligible atoms are dropped") {
    AngularMeasure m({{0.0, 1.0}, {1.0, 1e-17}});
    CHECK(m.atoms().size() == 1);
}

TEST_CASE("total mass and sector mass") {
    AngularMeasure m({{1.0, 2.0}, {4.0, 1.0}}, {{0.5, 2.5, 0.25}});
    CHECK(m.total_mass() == Approx(3.0 + 0.25 * 2.0));
    CHECK(m.sector_mass(0.9, 1.1) == Approx(2.0 + 0.25 * 0.2));
    // open sector: an atom exactly at an endpoint does not count
    CHECK(m.sector_mass(1.0, 1.1) == Approx(0.25 * 0.1));
    CHECK(m.sector_mass(0.0, two_pi) == Approx(m.total_mass()));
    CHECK_THROWS_AS(m.sector_mass(2.0, 1.0), critype::invalid_input);
    CHECK_THROWS_AS(m.sector_mass(-0.5, 1.0), critype::invalid_input);
}

TEST_CASE("first moment matches quadrature") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        const auto m = oracle::random_mixed(rng);
        critype::Complex q{0.0, 0.0};
        for (const auto& a : m.atoms()) q += a.mass * std::polar(1.0, a.angle);
        for (const auto& c : m.density()) {
            q += critype::Complex(
                oracle::integrate([&](double t) { return c.value * std::cos(t); },
                                  c.lo, c.hi),
                oracle::integrate([&](double t) { return c.value * std::sin(t); },
                                  c.lo, c.hi));
        }
        CHECK(std::abs(m.first_moment() - q) < 1e-8);
    }
}

TEST_CASE("single atom balances with the opposite atom") {
    AngularMeasure m({{0.0, 1.0}});
    const auto b = m.balancing_atom();
    REQUIRE_FALSE(b.balanced);
    CHECK(b.amplitude == Approx(1.0));
    CHECK(b.angle == Approx(pi));
    const auto s = m.star();
    CHECK(s.atoms().size() == 2);
    CHECK(std::abs(s.first_moment()) <= s.moment_tolerance());
}

TEST_CASE("two perpendicular unit atoms balance at amplitude sqrt(2)") {
    AngularMeasure m({{0.0, 1.0}, {pi / 2, 1.0}});
    const auto b = m.balancing_atom();
    REQUIRE_FALSE(b.balanced);
    CHECK(b.amplitude == Approx(std::sqrt(2.0)));
    CHECK(b.angle == Approx(5 * pi / 4));
}

TEST_CASE("balanced measures stay unchanged by star") {
    AngularMeasure m({{0.0, 1.0}, {pi, 1.0}});
    CHECK(m.balancing_atom().balanced);
    CHECK(m.star().atoms().size() == 2);
}

TEST_CASE("star zeroes the moment of random measures") {
    std::mt19937_64 rng(72);
    for (int trial = 0; trial < 30; ++trial) {
        const auto m = oracle::random_mixed(rng);
        if (m.is_zero()) continue;
        const auto s = m.star();
        CHECK(std::abs(s.first_moment()) <= s.moment_tolerance());
        CHECK(s.total_mass() >= m.total_mass());
    }
}

TEST_CASE("uniform density is balanced") {
    AngularMeasure m({}, {{0.0, two_pi, 1.0 / two_pi}});
    CHECK(m.balancing_atom().balanced);
    CHECK(m.total_mass() == Approx(1.0));
}

TEST_CASE("rotation shifts the moment and splits wrapping cells") {
    AngularMeasure m({{0.5, 1.5}}, {{5.5, 6.0, 0.4}});
    const double s = 0.5;
    const auto r = m.rotated(s);
    CHECK(r.total_mass() == Approx(m.total_mass()));
    const auto rotated_moment = std::polar(1.0, s) * m.first_moment();
    CHECK(std::abs(r.first_moment() - rotated_moment) < 1e-12);
    // [5.5, 6.0] + 0.5 straddles 2*pi, so the cell must split
    REQUIRE(r.density().size() == 2);
    CHECK(r.density()[0].lo == Approx(0.0));
    CHECK(r.density()[1].hi == Approx(two_pi));
}

TEST_CASE("moment tolerance scales with mass") {
    AngularMeasure small({{0.0, 1e-3}});
    AngularMeasure large({{0.0, 1e6}});
    CHECK(small.moment_tolerance() == Approx(1e-9));
    CHECK(large.moment_tolerance() == Approx(1e-3));
}
