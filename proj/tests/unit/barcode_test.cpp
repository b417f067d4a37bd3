#include "doctest.h"

#include "lagspec/barcode.hpp"
#include "lagspec/cli.hpp"
#include "lagspec/errors.hpp"
#include "lagspec/floer.hpp"
#include "../oracles.hpp"

#include <set>

using namespace lagspec;

namespace {

Bar bar(const Rational& b, const Rational& d, int k) { return {ExtRational(b), ExtRational(d), k}; }
Bar inf_bar(const Rational& b, int k) { return {ExtRational(b), ExtRational::pos_infinity(), k}; }

// a complex whose barcode is the given one: one generator per infinite bar,
// a pair y <- x per finite bar
FilteredComplex realize(const Barcode& b) {
    FilteredComplex c;
    for (const auto& br : b.bars) {
        if (!br.death.is_finite()) {
            c.generators.push_back({"g", br.birth.value(), br.degree});
            c.boundary.push_back({});
            continue;
        }
        std::size_t y = c.generators.size();
        c.generators.push_back({"y", br.birth.value(), br.degree});
        c.boundary.push_back({});
        c.generators.push_back({"x", br.death.value(), br.degree - 1});
        c.boundary.push_back({y});
    }
    return c;
}

}  // namespace

TEST_CASE("one generator gives one infinite bar") {
    FilteredComplex c;
    c.generators = {{"g", 3, 0}};
    c.boundary = {{}};
    Barcode b = decompose(c);
    REQUIRE(b.size() == 1);
    CHECK(b.bars[0] == inf_bar(3, 0));
}

TEST_CASE("an elementary pair gives one finite bar in the target degree") {
    FilteredComplex c;
    c.generators = {{"x", 5, 0}, {"y", 2, 1}};
    c.boundary = {{1}, {}};
    Barcode b = decompose(c);
    REQUIRE(b.size() == 1);
    CHECK(b.bars[0] == bar(2, 5, 1));
}

TEST_CASE("rank function counts bars alive on [a, b]") {
    Barcode one{{inf_bar(3, 0)}};
    CHECK(rank_function(one, 3, 10, 0) == 1);
    Barcode late{{bar(2, 5, 1)}};
    CHECK(rank_function(late, 1, 3, 1) == 0);
    Barcode two{{bar(2, 5, 1), bar(2, 7, 1)}};
    CHECK(rank_function(two, 2, 4, 1) == 2);
    CHECK(rank_function(two, 2, 6, 1) == 1);
    CHECK(rank_function(two, 2, 4, 0) == 0);
}

TEST_CASE("spectral invariants of simple barcodes") {
    Barcode z{{inf_bar(0, 0), inf_bar(0, 1)}};
    CHECK(c_minus(z) == 0);
    CHECK(c_plus(z) == 0);
    CHECK(gamma_of(z) == 0);
    Barcode b{{inf_bar(-1, 0), inf_bar(2, 1), bar(0, 1, 0)}};
    CHECK(gamma_of(b) == 3);
    CHECK(c_plus(shift(b, Rational(1, 3))) == c_plus(b) + Rational(1, 3));
    CHECK(c_minus(shift(b, -2)) == c_minus(b) - 2);
    CHECK(shift(shift(b, 5), -5) == b);
    CHECK(shift(b, 0) == b);
    CHECK(gamma_of(shift(b, 7)) == gamma_of(b));
}

TEST_CASE("ill-posed invariants are signalled") {
    Barcode none{{bar(0, 1, 0)}};
    CHECK_THROWS_AS(c_minus(none), IllPosedInvariant);
    Barcode twice{{inf_bar(0, 0), inf_bar(1, 0)}};
    CHECK_THROWS_AS(c_minus(twice), IllPosedInvariant);
}

TEST_CASE("invalid complexes are rejected") {
    FilteredComplex up;
    up.generators = {{"x", 1, 0}, {"y", 2, 1}};
    up.boundary = {{1}, {}};
    CHECK_THROWS_AS(decompose(up), InvalidComplex);

    FilteredComplex sq;
    sq.generators = {{"a", 3, 0}, {"b", 2, 1}, {"c", 1, 2}};
    sq.boundary = {{1}, {2}, {}};
    CHECK_THROWS_AS(decompose(sq), InvalidComplex);

    FilteredComplex deg;
    deg.generators = {{"x", 3, 0}, {"y", 2, 2}};
    deg.boundary = {{1}, {}};
    CHECK_THROWS_AS(decompose(deg), InvalidComplex);
}

TEST_CASE("bottleneck distance on small examples") {
    Barcode a{{bar(0, 2, 0)}};
    CHECK(bottleneck(a, a) == ExtRational(0));
    CHECK(bottleneck(a, Barcode{}) == ExtRational(1));
    CHECK(bottleneck(Barcode{{inf_bar(0, 0)}}, Barcode{{inf_bar(3, 0)}}) == ExtRational(3));
    CHECK(bottleneck(Barcode{{inf_bar(0, 0)}}, Barcode{{inf_bar(0, 1)}}).is_pos_inf());
}

TEST_CASE("decompose inverts realization on random barcodes") {
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        Barcode b;
        const int n = std::uniform_int_distribution<int>(1, 6)(rng);
        for (int j = 0; j < n; ++j) {
            Rational birth = random_rational(rng, -3, 3, 4);
            int k = std::uniform_int_distribution<int>(1, 2)(rng);
            if (std::uniform_int_distribution<int>(0, 2)(rng) == 0)
                b.bars.push_back(inf_bar(birth, k));
            else
                b.bars.push_back(bar(birth, birth + random_rational(rng, 1, 3, 4), k));
        }
        CHECK(decompose(realize(b)) == b);
    }
}

TEST_CASE("decompose matches sublevel ranks from direct elimination") {
    Rng rng(17);
    for (int i = 0; i < 100; ++i) {
        FilteredComplex c = random_complex(rng, 12);
        Barcode b = decompose(c);
        std::set<Rational> levels;
        for (const auto& g : c.generators) levels.insert(g.action);
        for (auto a = levels.begin(); a != levels.end(); ++a)
            for (auto e = a; e != levels.end(); ++e)
                for (int k = 0; k <= 2; ++k) REQUIRE(rank_function(b, *a, *e, k) == oracle::sublevel_rank(c, *a, *e, k));
    }
}

TEST_CASE("bottleneck agrees with exhaustive matching and is a metric") {
    Rng rng(23);
    auto random_barcode = [&]() {
        Barcode b;
        b.bars.push_back(inf_bar(random_rational(rng, -2, 2, 4), 0));
        const int n = std::uniform_int_distribution<int>(0, 4)(rng);
        for (int j = 0; j < n; ++j) {
            Rational birth = random_rational(rng, -2, 2, 4);
            b.bars.push_back(bar(birth, birth + random_rational(rng, 1, 8, 8) / 2, j % 2));
        }
        return b;
    };
    for (int i = 0; i < 60; ++i) {
        Barcode a = random_barcode(), b = random_barcode(), c = random_barcode();
        bool finite = false;
        Rational ab = oracle::bottleneck(a, b, finite);
        REQUIRE(finite);
        CHECK(bottleneck(a, b) == ExtRational(ab));
        CHECK(bottleneck(a, b) == bottleneck(b, a));
        CHECK(bottleneck(a, a) == ExtRational(0));
        CHECK(bottleneck(a, c).value() <= bottleneck(a, b).value() + bottleneck(b, c).value());
    }
}

TEST_CASE("graph of a four-critical-point function against the zero section") {
    // values 0, 1, 1/4, 3/4 at the quarter points
    PLFunction f{1, {0, Rational(1, 4), Rational(1, 2), Rational(3, 4)}, {0, 1, Rational(1, 4), Rational(3, 4)}};
    Barcode b = barcode_of_pair(graph_of_differential(f), zero_section(1, 0, Rational(1, 8)));
    Barcode want{{inf_bar(0, 0), inf_bar(1, 1), bar(Rational(1, 4), Rational(3, 4), 0)}};
    CHECK(b == want);
    CHECK(c_minus(b) == 0);
    CHECK(c_plus(b) == 1);
}
