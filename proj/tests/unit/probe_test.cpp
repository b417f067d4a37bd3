#include "doctest.h"

#include "lagspec/errors.hpp"
#include "lagspec/floer.hpp"
#include "lagspec/support_probe.hpp"
#include "../oracles.hpp"

#include <cmath>

using namespace lagspec;

namespace {

PLCurve insert_witness(const PLCurve& l, const ProbeWitness& w) {
    std::vector<Point> lift = l.vertices();
    lift.insert(lift.begin() + static_cast<long>(w.segment) + 1, w.path.begin(), w.path.end());
    return PLCurve(l.period(), lift, l.brane_constant());
}

}  // namespace

TEST_CASE("points on the zero section are certified") {
    PLCurve z = zero_section(1);
    ProbeReport r = probe(z, {Rational(1, 3), 0}, Rational(1, 16));
    CHECK(r.positive);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->gamma == r.gamma_lower_bound);
    CHECK(gamma_pair(insert_witness(z, *r.witness), z, Genericity::limit) == r.gamma_lower_bound);
    for (const auto& p : r.witness->path) {
        CHECK(abs(p.q - Rational(1, 3)) < Rational(1, 16));
        CHECK(abs(p.p) < Rational(1, 16));
    }
}

TEST_CASE("far points have no certificate") {
    ProbeReport r = probe(zero_section(1), {Rational(1, 3), Rational(1, 2)}, Rational(1, 16));
    CHECK_FALSE(r.positive);
    CHECK(r.gamma_lower_bound == 0);
    CHECK(r.evaluated == 0);
    CHECK_FALSE(r.witness.has_value());
    CHECK_THROWS_AS(probe(zero_section(1), {0, 0}, 0), PreconditionError);
}

TEST_CASE("density on a smooth line scales quadratically") {
    PLCurve z = zero_section(1);
    const Point c{Rational(1, 2), 0};
    std::vector<Rational> eps, dens;
    for (long k = 3; k <= 8; ++k) {
        eps.push_back(Rational(1, 1L << k));
        dens.push_back(density(z, c, eps.back()));
    }
    for (std::size_t i = 1; i < dens.size(); ++i) CHECK(dens[i] * 4 == dens[i - 1]);
    CHECK(density(z, {Rational(1, 2), 1}, Rational(1, 8)) == 0);
    CHECK(std::abs(density_exponent(eps, dens) - 2.0) < 1e-9);
}

TEST_CASE("support sweep over the zero section") {
    PLCurve z = zero_section(1);
    CHECK(estimate_support(z, Grid{0, 1, 0, 1, 0, 0}, Rational(1, 8), 0).empty());
    Grid g{0, 1, Rational(-1, 2), Rational(1, 2), 4, 16};
    auto pts = g.points();
    REQUIRE(pts.size() == 64);
    auto found = estimate_support(z, g, Rational(1, 8), 0);
    std::size_t expected = 0;
    for (const auto& p : pts) expected += oracle::near_zero_section(p, Rational(1, 8)) ? 1 : 0;
    CHECK(found.size() == expected);
    for (const auto& s : found) CHECK(oracle::near_zero_section(s.z, Rational(1, 8)));
}

TEST_CASE("bump example") {
    PLCurve b = figure_one_bump(1, Rational(1, 2), Rational(1, 8));
    CHECK(b.max_p() == Rational(1, 8));
    CHECK(b.min_p() == Rational(-1, 8));
    CHECK_THROWS_AS(figure_one_bump(1, Rational(1, 2), Rational(1, 2)), PreconditionError);
    PLCurve wrapped = figure_one_bump(1, Rational(31, 32), Rational(1, 8));
    CHECK(gamma_pair(wrapped, zero_section(1), Genericity::limit) == Rational(1, 64));
}
