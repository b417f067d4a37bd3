#include "lagspec/cli.hpp"

#include "lagspec/errors.hpp"

#include <algorithm>
#include <bitset>
#include <optional>
#include <set>

namespace lagspec {

namespace {

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

using Column = std::bitset<32>;

}  // namespace

Rational random_rational(Rng& rng, long lo, long hi, long denominator) {
    return ratio(uniform(rng, lo * denominator, hi * denominator), denominator);
}

FilteredComplex random_complex(Rng& rng, std::size_t max_generators) {
    if (max_generators == 0 || max_generators > 32) throw PreconditionError("complex size must be in 1..32");
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_generators)));
    FilteredComplex c;
    c.grading = Grading::cohomological;
    for (std::size_t i = 0; i < n; ++i)
        c.generators.push_back({"g" + std::to_string(i), random_rational(rng, -4, 4, 4), static_cast<int>(uniform(rng, 0, 2))});

    // elementary pairs x -> y with deg y = deg x + 1 and lower action
    std::vector<Column> d(n);
    std::vector<bool> used(n, false);
    for (std::size_t x = 0; x < n; ++x) {
        if (used[x] || uniform(rng, 0, 2) == 0) continue;
        std::vector<std::size_t> cand;
        for (std::size_t y = 0; y < n; ++y)
            if (!used[y] && y != x && c.generators[y].degree == c.generators[x].degree + 1 &&
                c.generators[y].action < c.generators[x].action)
                cand.push_back(y);
        if (cand.empty()) continue;
        std::size_t y = cand[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(cand.size()) - 1))];
        used[x] = used[y] = true;
        d[x].set(y);
    }

    // filtered change of basis T (columns), unitriangular in the action order
    std::vector<Column> T(n), Tinv(n);
    for (std::size_t x = 0; x < n; ++x) {
        T[x].set(x);
        for (std::size_t z = 0; z < n; ++z)
            if (c.generators[z].degree == c.generators[x].degree &&
                c.generators[z].action < c.generators[x].action && uniform(rng, 0, 2) == 0)
                T[x].set(z);
    }
    // invert by processing in increasing action order
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return c.generators[a].action < c.generators[b].action; });
    for (std::size_t x : order) {
        // e_x = T e_x + sum_{z in T[x], z != x} e_z  and e_z = T (Tinv e_z) already known
        Column col;
        col.set(x);
        for (std::size_t z = 0; z < n; ++z)
            if (z != x && T[x].test(z)) col ^= Tinv[z];
        Tinv[x] = col;
    }
    auto apply = [&](const std::vector<Column>& M, const Column& v) {
        Column out;
        for (std::size_t i = 0; i < n; ++i)
            if (v.test(i)) out ^= M[i];
        return out;
    };
    c.boundary.assign(n, {});
    for (std::size_t x = 0; x < n; ++x) {
        Column col = apply(Tinv, apply(d, T[x]));
        for (std::size_t y = 0; y < n; ++y)
            if (col.test(y)) c.boundary[x].push_back(y);
    }
    return c;
}

PLFunction random_pl_function(Rng& rng, const Rational& period, std::size_t max_knots) {
    if (max_knots == 0) throw PreconditionError("need at least one knot");
    const std::size_t m = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_knots)));
    std::set<long> slots;
    while (slots.size() < m) slots.insert(uniform(rng, 0, 63));
    PLFunction f{period, {}, {}};
    for (long s : slots) {
        f.knots.push_back(period * ratio(s, 64));
        f.values.push_back(random_rational(rng, -2, 2, 8));
    }
    return f;
}

PLCurve random_curve(Rng& rng) {
    const Rational Q = 4;
    for (;;) {
        std::optional<PLCurve> base;
        if (uniform(rng, 0, 1) == 0) {
            PLFunction f = random_pl_function(rng, Q, 10);
            if (f.oscillation() == 0) continue;
            base = graph_of_differential(f);
        } else {
            Square K{0, 0, 1};
            Point z{ratio(uniform(rng, 1, 63), 64), ratio(uniform(rng, 1, 63), 64)};
            Rational eps = Rational(1, 21) / uniform(rng, 1, 4);
            try {
                base = make_tongue(peano_base_curve(), z, {}, eps, K).curve_after;
            } catch (const NoRoom&) {
                continue;
            } catch (const PreconditionError&) {
                continue;
            }
        }
        // rotate the annulus so that unrelated curves rarely share segments
        Rational t = ratio(uniform(rng, 0, 96), 97) * Q;
        std::vector<Point> lift = base->vertices();
        for (auto& v : lift) v.q += t;
        return PLCurve(Q, std::move(lift), base->brane_constant() + random_rational(rng, -1, 1, 8),
                       PLCurve::Check::local);
    }
}

PLCurve fiberwise_sum(const PLCurve& l, const PLFunction& g) {
    if (l.period() != g.period) throw PreconditionError("curve and function on different circles");
    const Rational& Q = l.period();
    std::vector<Point> lift;
    const long n = static_cast<long>(l.size());
    auto slope_at = [&](const Rational& q, bool right) -> Rational {
        // slope of g just to the right (or left) of q
        Rational x = q - Q * floor_of(q / Q);
        const std::size_t m = g.knots.size();
        for (std::size_t i = 0; i < m; ++i) {
            Rational a = g.knots[i], b = i + 1 < m ? g.knots[i + 1] : g.knots[0] + Q;
            for (const Rational& y : {x, Rational(x + Q)})
                if ((right && a <= y && y < b) || (!right && a < y && y <= b)) return g.slope(i);
        }
        return g.slope(m - 1);
    };
    auto is_knot = [&](const Rational& q) {
        Rational x = q - Q * floor_of(q / Q);
        return std::find(g.knots.begin(), g.knots.end(), x) != g.knots.end();
    };
    for (long i = 0; i < n; ++i) {
        Point a = l.vertex(i), b = l.vertex(i + 1);
        if (is_knot(a.q)) throw PreconditionError("curve vertex sits on a knot of the perturbation");
        if (a.q == b.q) {
            lift.push_back({a.q, a.p + slope_at(a.q, true)});
            continue;
        }
        const bool rightward = a.q < b.q;
        lift.push_back({a.q, a.p + slope_at(a.q, rightward)});
        // knots strictly between a.q and b.q in travel order
        std::vector<Rational> cuts;
        Rational lo = min_of(a.q, b.q), hi = max_of(a.q, b.q);
        for (Rational k = floor_of(lo / Q) - 1; k <= ceil_of(hi / Q) + 1; k += 1)
            for (const auto& kn : g.knots) {
                Rational x = kn + k * Q;
                if (lo < x && x < hi) cuts.push_back(x);
            }
        std::sort(cuts.begin(), cuts.end());
        if (!rightward) std::reverse(cuts.begin(), cuts.end());
        for (const auto& x : cuts) {
            Rational p = a.p + (b.p - a.p) * (x - a.q) / (b.q - a.q);
            lift.push_back({x, p + slope_at(x, !rightward)});
            lift.push_back({x, p + slope_at(x, rightward)});
        }
    }
    Rational g0 = g(l.vertex(0).q);
    return PLCurve(Q, std::move(lift), l.brane_constant() + g0);
}

}  // namespace lagspec
