#pragma once

#include "lagspec/barcode.hpp"
#include "lagspec/curve.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using lagspec::Rational;

inline std::size_t gf2_rank(std::vector<std::uint64_t> rows) {
    std::size_t r = 0;
    for (int bit = 0; bit < 64; ++bit) {
        const std::uint64_t m = std::uint64_t{1} << bit;
        std::size_t piv = r;
        while (piv < rows.size() && !(rows[piv] & m)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r && (rows[i] & m)) rows[i] ^= rows[r];
        ++r;
    }
    return r;
}

// rank of H^k(C_{<=a}) -> H^k(C_{<=b}) for a cochain complex filtered by action
inline std::size_t sublevel_rank(const lagspec::FilteredComplex& c, const Rational& a, const Rational& b, int k) {
    const std::size_t n = c.generators.size();
    auto d = [&](std::size_t x) {
        std::uint64_t v = 0;
        for (auto y : c.boundary[x]) v ^= std::uint64_t{1} << y;
        return v;
    };
    // kernel of d restricted to degree k, action <= a: track (image, combination)
    std::vector<std::pair<std::uint64_t, std::uint64_t>> rows;
    for (std::size_t x = 0; x < n; ++x)
        if (c.generators[x].degree == k && c.generators[x].action <= a) rows.push_back({d(x), std::uint64_t{1} << x});
    std::vector<std::uint64_t> kernel;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        int bit = -1;
        for (int t = 0; t < 64; ++t)
            if (rows[i].first >> t & 1) {
                bit = t;
                break;
            }
        if (bit < 0) {
            kernel.push_back(rows[i].second);
            continue;
        }
        for (std::size_t j = i + 1; j < rows.size(); ++j)
            if (rows[j].first >> bit & 1) {
                rows[j].first ^= rows[i].first;
                rows[j].second ^= rows[i].second;
            }
    }
    std::vector<std::uint64_t> coboundaries;
    for (std::size_t x = 0; x < n; ++x)
        if (c.generators[x].degree == k - 1 && c.generators[x].action <= b) coboundaries.push_back(d(x));
    std::vector<std::uint64_t> both = coboundaries;
    both.insert(both.end(), kernel.begin(), kernel.end());
    return gf2_rank(both) - gf2_rank(coboundaries);
}

inline Rational eval_pl(const lagspec::PLFunction& f, Rational q) {
    const Rational& Q = f.period;
    while (q < 0) q += Q;
    while (q >= Q) q -= Q;
    const std::size_t m = f.knots.size();
    for (std::size_t i = 0; i < m; ++i) {
        Rational a = f.knots[i], b = i + 1 < m ? f.knots[i + 1] : f.knots[0] + Q;
        for (Rational y : {q, Rational(q + Q)})
            if (a <= y && y <= b) {
                const Rational& va = f.values[i];
                const Rational& vb = f.values[(i + 1) % m];
                if (a == b) return va;
                return va + (vb - va) * (y - a) / (b - a);
            }
    }
    return f.values[0];
}

// oscillation of f - g, attained at a knot of one of them
inline Rational osc_difference(const lagspec::PLFunction& f, const lagspec::PLFunction& g) {
    std::vector<Rational> xs(f.knots);
    xs.insert(xs.end(), g.knots.begin(), g.knots.end());
    Rational lo = eval_pl(f, xs[0]) - eval_pl(g, xs[0]), hi = lo;
    for (const auto& x : xs) {
        Rational v = eval_pl(f, x) - eval_pl(g, x);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return hi - lo;
}

struct SimpleBar {
    Rational birth, death;
    bool infinite;
    int degree;
};

inline std::vector<SimpleBar> simple(const lagspec::Barcode& b) {
    std::vector<SimpleBar> out;
    for (const auto& bar : b.bars) {
        SimpleBar s{bar.birth.value(), 0, !bar.death.is_finite(), bar.degree};
        if (!s.infinite) s.death = bar.death.value();
        out.push_back(s);
    }
    return out;
}

// exhaustive bottleneck over candidate distances with augmenting-path matching;
// returns false in `finite` when no matching of infinite bars exists
inline Rational bottleneck(const lagspec::Barcode& A, const lagspec::Barcode& B, bool& finite) {
    auto a = simple(A), b = simple(B);
    const std::size_t n = a.size(), m = b.size();
    auto absr = [](const Rational& r) -> Rational { return r < 0 ? Rational(-r) : r; };
    auto pair_cost = [&](const SimpleBar& x, const SimpleBar& y, Rational& out) {
        if (x.degree != y.degree || x.infinite != y.infinite) return false;
        out = absr(x.birth - y.birth);
        if (!x.infinite) out = std::max(out, absr(x.death - y.death));
        return true;
    };
    std::set<Rational> cand{Rational(0)};
    for (const auto& x : a)
        if (!x.infinite) cand.insert((x.death - x.birth) / 2);
    for (const auto& y : b)
        if (!y.infinite) cand.insert((y.death - y.birth) / 2);
    for (const auto& x : a)
        for (const auto& y : b) {
            Rational c;
            if (pair_cost(x, y, c)) cand.insert(c);
        }
    // left: a then diagonal copies of b; right: b then diagonal copies of a
    auto feasible = [&](const Rational& delta) {
        const std::size_t L = n + m;
        std::vector<std::vector<std::size_t>> adj(L);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                Rational c;
                if (pair_cost(a[i], b[j], c) && c <= delta) adj[i].push_back(j);
            }
            if (!a[i].infinite && (a[i].death - a[i].birth) / 2 <= delta) adj[i].push_back(m + i);
        }
        for (std::size_t j = 0; j < m; ++j) {
            if (!b[j].infinite && (b[j].death - b[j].birth) / 2 <= delta) adj[n + j].push_back(j);
            for (std::size_t i = 0; i < n; ++i) adj[n + j].push_back(m + i);
        }
        std::vector<long> match_r(L, -1);
        for (std::size_t u = 0; u < L; ++u) {
            std::vector<bool> seen(L, false);
            auto augment = [&](auto&& self, std::size_t v) -> bool {
                for (auto r : adj[v]) {
                    if (seen[r]) continue;
                    seen[r] = true;
                    if (match_r[r] < 0 || self(self, static_cast<std::size_t>(match_r[r]))) {
                        match_r[r] = static_cast<long>(v);
                        return true;
                    }
                }
                return false;
            };
            if (!augment(augment, u)) return false;
        }
        return true;
    };
    for (const auto& c : cand)
        if (feasible(c)) {
            finite = true;
            return c;
        }
    finite = false;
    return 0;
}

// sup-norm distance from z to the horizontal line p = 0 is below eps
inline bool near_zero_section(const lagspec::Point& z, const Rational& eps) {
    return -eps < z.p && z.p < eps;
}

}  // namespace oracle
