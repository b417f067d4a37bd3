#include "doctest.h"

#include "lagspec/cli.hpp"
#include "lagspec/coisotropy.hpp"
#include "lagspec/errors.hpp"

using namespace lagspec;

namespace {

RVec vec(std::initializer_list<long> xs) {
    RVec v;
    for (long x : xs) v.push_back(Rational(x));
    return v;
}

std::size_t rational_rank(std::vector<RVec> m) {
    std::size_t r = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[r]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c] / m[r][c];
            for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

// a linear subspace W of R^{2n} is coisotropic iff rank(omega|W) = 2 dim W - 2n
bool linear_coisotropic(std::size_t n, const std::vector<RVec>& span) {
    std::vector<RVec> basis;
    for (const auto& v : span) {
        auto trial = basis;
        trial.push_back(v);
        if (rational_rank(trial) > basis.size()) basis = trial;
    }
    const long k = static_cast<long>(basis.size());
    std::vector<RVec> gram(basis.size(), RVec(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) gram[i][j] = omega(n, CoordinateSplit::blocked, basis[i], basis[j]);
    return static_cast<long>(rational_rank(gram)) == 2 * k - 2 * static_cast<long>(n);
}

// cross-polytope on +-v for each spanning vector, a neighbourhood of 0 in span(vs)
PLSet flat(std::size_t n, const std::vector<RVec>& vs) {
    std::vector<RVec> cell;
    for (const auto& v : vs) {
        cell.push_back(v);
        RVec w = v;
        for (auto& e : w) e = -e;
        cell.push_back(w);
    }
    return {n, CoordinateSplit::blocked, {cell}};
}

}  // namespace

TEST_CASE("segments in the plane") {
    PLSet seg{1, CoordinateSplit::blocked, {{vec({0, 0}), vec({2, 0})}}};
    CHECK(is_cone_coisotropic_at(seg, vec({1, 0})).coisotropic);
    auto end = is_cone_coisotropic_at(seg, vec({0, 0}));
    CHECK_FALSE(end.coisotropic);
    REQUIRE(end.witness_direction.has_value());
    CHECK_FALSE(contingent_cone(seg, vec({0, 0})).contains(*end.witness_direction));
    CHECK_THROWS_AS(is_cone_coisotropic_at(seg, vec({3, 0})), PreconditionError);
    CHECK_THROWS_AS(is_cone_coisotropic_at(seg, vec({1, 0, 0})), PreconditionError);
}

TEST_CASE("cones of a corner") {
    PLSet corner{1, CoordinateSplit::blocked, {{vec({0, 0}), vec({1, 0})}, {vec({0, 0}), vec({0, 1})}}};
    Cone minus = contingent_cone(corner, vec({0, 0}));
    Cone plus = paratingent_cone(corner, vec({0, 0}));
    CHECK(minus.contains(vec({1, 0})));
    CHECK(minus.contains(vec({0, 1})));
    CHECK_FALSE(minus.contains(vec({1, 1})));
    CHECK(plus.contains(vec({1, -1})));
    CHECK(cone_subset(minus, plus));
    CHECK_FALSE(cone_subset(plus, minus));
    // the paratingent cone spans the plane, so the orthogonal is trivial
    auto v = is_cone_coisotropic_at(corner, vec({0, 0}));
    CHECK(v.coisotropic);
    CHECK(v.orthogonal_of_span.empty());
    PLSet hook{2, CoordinateSplit::blocked, {{vec({0, 0, 0, 0}), vec({1, 0, 0, 0})}, {vec({0, 0, 0, 0}), vec({0, 1, 0, 0})}}};
    CHECK_FALSE(is_cone_coisotropic_at(hook, vec({0, 0, 0, 0})).coisotropic);
}

TEST_CASE("open pieces of top dimension are coisotropic") {
    PLSet tri{1, CoordinateSplit::blocked, {{vec({0, 0}), vec({3, 0}), vec({0, 3})}}};
    CHECK(is_cone_coisotropic_at(tri, vec({1, 1})).coisotropic);
    CHECK(cone_equal(contingent_cone(tri, vec({1, 1})), paratingent_cone(tri, vec({1, 1}))));
    PLSet point{1, CoordinateSplit::blocked, {{vec({0, 0})}}};
    CHECK_FALSE(is_cone_coisotropic_at(point, vec({0, 0})).coisotropic);
}

TEST_CASE("flat pieces agree with linear coisotropy") {
    Rng rng(31);
    std::uniform_int_distribution<int> coeff(-2, 2), count(1, 4);
    int yes = 0, no = 0;
    for (int t = 0; t < 60; ++t) {
        std::vector<RVec> vs;
        const int k = count(rng);
        for (int i = 0; i < k; ++i) {
            RVec v(4);
            for (auto& e : v) e = coeff(rng);
            if (rational_rank({v}) == 0) v[0] = 1;
            vs.push_back(v);
        }
        const bool want = linear_coisotropic(2, vs);
        (want ? yes : no)++;
        CHECK(is_cone_coisotropic_at(flat(2, vs), RVec(4, Rational(0))).coisotropic == want);
    }
    CHECK(yes > 0);
    CHECK(no > 0);
}

TEST_CASE("verdicts are invariant under a linear symplectic map") {
    // (q1, q2, p1, p2) -> (q1 + p1, q2 + 2 p2, p1, p2) preserves omega
    auto map = [](const RVec& v) {
        return RVec{v[0] + v[2], v[1] + 2 * v[3], v[2], v[3]};
    };
    CHECK(omega(2, CoordinateSplit::blocked, map(vec({1, 0, 0, 0})), map(vec({0, 0, 1, 0}))) == 1);
    std::vector<std::vector<RVec>> cells{{vec({0, 0, 0, 0}), vec({1, 0, 0, 0}), vec({0, 1, 0, 0})},
                                         {vec({0, 0, 0, 0}), vec({0, 0, 1, 0})}};
    PLSet V{2, CoordinateSplit::blocked, cells};
    PLSet W = V;
    for (auto& cell : W.cells)
        for (auto& v : cell) v = map(v);
    for (const RVec& x : {vec({0, 0, 0, 0})}) {
        RVec y = map(x);
        CHECK(is_cone_coisotropic_at(V, x).coisotropic == is_cone_coisotropic_at(W, y).coisotropic);
    }
    RVec inner{Rational(1, 4), Rational(1, 4), 0, 0};
    CHECK(is_cone_coisotropic_at(V, inner).coisotropic == is_cone_coisotropic_at(W, map(inner)).coisotropic);
}

TEST_CASE("coordinate conventions") {
    RVec u = vec({1, 0, 0, 0}), v = vec({0, 0, 1, 0});
    CHECK(omega(2, CoordinateSplit::blocked, u, v) == 1);
    CHECK(omega(2, CoordinateSplit::interleaved, vec({1, 0, 0, 0}), vec({0, 1, 0, 0})) == 1);
    PLSet lag{2, CoordinateSplit::interleaved, {{vec({-1, 0, 0, 0}), vec({1, 0, 0, 0}), vec({0, 0, 1, 0}), vec({0, 0, -1, 0})}}};
    CHECK(is_cone_coisotropic_at(lag, vec({0, 0, 0, 0})).coisotropic);
    PLSet sym{2, CoordinateSplit::interleaved, {{vec({-1, 0, 0, 0}), vec({1, 0, 0, 0}), vec({0, 1, 0, 0}), vec({0, -1, 0, 0})}}};
    CHECK_FALSE(is_cone_coisotropic_at(sym, vec({0, 0, 0, 0})).coisotropic);
}
