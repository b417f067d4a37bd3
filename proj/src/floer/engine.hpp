#pragma once

#include "lagspec/curve.hpp"
#include "lagspec/errors.hpp"
#include "lagspec/geometry.hpp"
#include "lagspec/infinitesimal.hpp"
#include "lagspec/persistence_reduce.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lagspec::detail {

// Raised in limit mode when a predicate vanishes identically; the caller
// retries with another displacement.
struct Degenerate {
    std::string what;
};

inline double approx(const Rational& r) { return r.get_d(); }
inline double approx(const Infinitesimal& r) { return r.standard().get_d(); }

template <class S>
struct Chain {
    std::vector<Vec2<S>> pts;  // segment i joins pts[i] and pts[i+1]
    std::vector<S> prim;
    bool closed = true;
    std::vector<std::size_t> origin;  // segment of the source curve
    std::vector<std::array<double, 4>> box;

    std::size_t segments() const { return pts.size() - 1; }

    void build_boxes() {
        box.clear();
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            double aq = approx(pts[i].q), bq = approx(pts[i + 1].q);
            double ap = approx(pts[i].p), bp = approx(pts[i + 1].p);
            double m = 1e-9 * (1.0 + std::max({std::fabs(aq), std::fabs(bq), std::fabs(ap), std::fabs(bp)}));
            box.push_back({std::min(aq, bq) - m, std::max(aq, bq) + m, std::min(ap, bp) - m, std::max(ap, bp) + m});
        }
    }
};

template <class S>
Chain<S> chain_of_curve(const PLCurve& c) {
    Chain<S> ch;
    const std::size_t n = c.size();
    for (std::size_t i = 0; i <= n; ++i) {
        Point v = c.vertex(static_cast<long>(i));
        ch.pts.push_back({S(v.q), S(v.p)});
        ch.prim.push_back(S(c.primitive_at_vertex(i)));
    }
    for (std::size_t i = 0; i < n; ++i) ch.origin.push_back(i);
    ch.closed = true;
    ch.build_boxes();
    return ch;
}

inline Chain<Rational> fiber_chain(const PLCurve& c, const Rational& x) {
    Chain<Rational> ch;
    ch.pts.push_back({x, c.min_p() - 1});
    ch.pts.push_back({x, c.max_p() + 1});
    ch.prim = {Rational(0), Rational(0)};
    ch.closed = false;
    ch.origin = {0};
    ch.build_boxes();
    return ch;
}

inline std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Subdivides every segment once and moves vertex j by d*(alpha, w_j), with
// the w_j balanced so that the displaced loop stays exact.
inline Chain<Infinitesimal> displaced_chain(const PLCurve& c, unsigned attempt) {
    const std::size_t n = c.size();
    const std::size_t m = 2 * n;
    const Rational& Q = c.period();
    std::vector<Point> u(m);
    for (std::size_t i = 0; i < n; ++i) {
        Point a = c.vertex(static_cast<long>(i)), b = c.vertex(static_cast<long>(i) + 1);
        u[2 * i] = a;
        u[2 * i + 1] = {(a.q + b.q) / 2, (a.p + b.p) / 2};
    }
    auto lifted = [&](long j) {
        long k = j >= 0 ? j / static_cast<long>(m) : -((-j + static_cast<long>(m) - 1) / static_cast<long>(m));
        Point v = u[static_cast<std::size_t>(j - k * static_cast<long>(m))];
        v.q += Q * k;
        return v;
    };
    std::vector<Rational> coef(m), w(m);
    for (std::size_t j = 0; j < m; ++j)
        coef[j] = (lifted(static_cast<long>(j) + 1).q - lifted(static_cast<long>(j) - 1).q) / 2;

    const std::uint64_t seed = mix(0x5eed0000ULL + attempt);
    Rational alpha = Rational(1) + ratio(static_cast<long>(seed % 7), 11);
    if (attempt % 2 == 1) alpha = -alpha;
    Rational c0 = Rational(3) + ratio(static_cast<long>((seed >> 8) % 5), 3);
    for (std::size_t j = 0; j < m; ++j) {
        Rational base = j < m / 2 ? c0 : Rational(-c0);
        if (m == 2) base = j == 0 ? c0 : Rational(-c0);
        w[j] = base + ratio(static_cast<long>(mix(seed ^ (j * 0x1234567ULL)) % 17), 64);
    }
    std::size_t pick = m;
    for (std::size_t j = 0; j < m; ++j) {
        if (sgn(coef[j]) == 0) continue;
        if (pick == m || abs(coef[j]) > abs(coef[pick])) pick = j;
    }
    if (pick == m) throw PreconditionError("curve has no horizontal extent");
    Rational W1 = 0;
    for (std::size_t j = 0; j < m; ++j) W1 += w[j] * coef[j];
    w[pick] -= W1 / coef[pick];

    Chain<Infinitesimal> ch;
    for (std::size_t j = 0; j <= m; ++j) {
        Point v = lifted(static_cast<long>(j));
        const Rational& wj = w[j % m];
        ch.pts.push_back({Infinitesimal::linear(v.q, alpha), Infinitesimal::linear(v.p, wj)});
    }
    ch.prim.resize(m + 1);
    ch.prim[0] = Infinitesimal(c.brane_constant());
    for (std::size_t j = 0; j < m; ++j) {
        const auto& a = ch.pts[j];
        const auto& b = ch.pts[j + 1];
        ch.prim[j + 1] = ch.prim[j] + (a.p + b.p) * (b.q - a.q) / Infinitesimal(2);
    }
    if (!(ch.prim[m] == ch.prim[0])) throw Error("internal: displaced curve lost exactness");
    for (std::size_t j = 0; j < m; ++j) ch.origin.push_back(j / 2);
    ch.closed = true;
    ch.build_boxes();
    return ch;
}

template <class S>
struct Crossing {
    std::size_t seg1 = 0, seg2 = 0;
    long shift = 0;
    S t1, t2;
    Vec2<S> point;
    S action;
    int degree = 0;
};

template <class S>
struct PairData {
    std::vector<Crossing<S>> crossings;
    std::vector<std::vector<std::size_t>> boundary;
    struct LuneRec {
        std::size_t upper, lower;
        S area;
        std::vector<Vec2<S>> polygon;
    };
    std::vector<LuneRec> lunes;
    std::vector<PersistencePairing> pairing;
};

template <class S>
[[noreturn]] void degenerate(bool limit, const std::string& what, long a, long b) {
    if (limit) throw Degenerate{what};
    throw NonTransverse(what, a, b);
}

template <class S>
S value_on_segment(const Chain<S>& ch, std::size_t i, const S& t) {
    const auto& a = ch.pts[i];
    const auto& b = ch.pts[i + 1];
    S dq = b.q - a.q, dp = b.p - a.p;
    return ch.prim[i] + t * dq * (a.p + t * dp / S(2));
}

template <class S>
std::vector<Crossing<S>> find_crossings(const Chain<S>& c1, const Chain<S>& c2, const Rational& period, bool limit) {
    std::vector<Crossing<S>> out;
    const double Q = period.get_d();
    const S SQ(period);
    for (std::size_t i = 0; i < c1.segments(); ++i) {
        const auto& A = c1.box[i];
        for (std::size_t j = 0; j < c2.segments(); ++j) {
            const auto& B = c2.box[j];
            if (A[3] < B[2] || B[3] < A[2]) continue;
            long kmin = static_cast<long>(std::floor((A[0] - B[1]) / Q));
            long kmax = static_cast<long>(std::ceil((A[1] - B[0]) / Q));
            for (long k = kmin; k <= kmax; ++k) {
                if (B[1] + k * Q < A[0] || A[1] < B[0] + k * Q) continue;
                S off = SQ * S(Rational(k));
                Vec2<S> b0{c2.pts[j].q + off, c2.pts[j].p}, b1{c2.pts[j + 1].q + off, c2.pts[j + 1].p};
                auto hit = intersect_segments<S>(c1.pts[i], c1.pts[i + 1], b0, b1);
                if (hit.kind == SegmentHit::none) continue;
                if (hit.kind == SegmentHit::degenerate)
                    degenerate<S>(limit, "segments " + std::to_string(c1.origin[i]) + " and " +
                                             std::to_string(c2.origin[j]) + " touch or overlap",
                                  static_cast<long>(c1.origin[i]), static_cast<long>(c2.origin[j]));
                Crossing<S> x;
                x.seg1 = i;
                x.seg2 = j;
                x.shift = k;
                x.t1 = hit.t;
                x.t2 = hit.s;
                Vec2<S> d1 = c1.pts[i + 1] - c1.pts[i];
                Vec2<S> d2 = b1 - b0;
                x.point = c1.pts[i] + d1 * hit.t;
                x.action = value_on_segment(c1, i, hit.t) - value_on_segment(c2, j, hit.s);
                x.degree = sign_of(cross2(d2, d1)) > 0 ? 0 : 1;
                out.push_back(std::move(x));
            }
        }
    }
    return out;
}

// Positions sorted along a chain; ties mean two crossings at one point.
template <class S>
void check_distinct_along(const std::vector<Crossing<S>>& xs, int chain, bool limit) {
    std::vector<std::size_t> idx(xs.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    auto seg = [&](std::size_t a) { return chain == 1 ? xs[a].seg1 : xs[a].seg2; };
    auto par = [&](std::size_t a) -> const S& { return chain == 1 ? xs[a].t1 : xs[a].t2; };
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (seg(a) != seg(b)) return seg(a) < seg(b);
        return par(a) < par(b);
    });
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
        if (seg(idx[i]) == seg(idx[i + 1]) && par(idx[i]) == par(idx[i + 1]))
            degenerate<S>(limit, "two crossings coincide", static_cast<long>(seg(idx[i])),
                          static_cast<long>(seg(idx[i])));
}

inline long floor_div(long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

// vertex s of the periodic lift of a closed chain
template <class S>
Vec2<S> lifted_vertex(const Chain<S>& ch, long s, const S& SQ) {
    const long m = static_cast<long>(ch.segments());
    if (!ch.closed) return ch.pts[static_cast<std::size_t>(s)];
    long k = floor_div(s, m);
    Vec2<S> v = ch.pts[static_cast<std::size_t>(s - k * m)];
    if (k != 0) v.q = v.q + SQ * S(Rational(k));
    return v;
}

template <class S>
std::vector<Vec2<S>> lifted_path(const Chain<S>& ch, const S& SQ, long sa, const S& ta, long sb, const S& tb) {
    auto at = [&](long s, const S& t) {
        Vec2<S> a = lifted_vertex(ch, s, SQ), b = lifted_vertex(ch, s + 1, SQ);
        return a + (b - a) * t;
    };
    std::vector<Vec2<S>> out;
    out.push_back(at(sa, ta));
    if (sa < sb || (sa == sb && ta < tb)) {
        for (long s = sa + 1; s <= sb; ++s) out.push_back(lifted_vertex(ch, s, SQ));
    } else {
        for (long s = sa; s > sb; --s) out.push_back(lifted_vertex(ch, s, SQ));
    }
    out.push_back(at(sb, tb));
    return out;
}

template <class S>
S twice_area(const std::vector<Vec2<S>>& poly) {
    S twice = S(0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % poly.size()];
        twice = twice + (a.q * b.p - b.q * a.p);
    }
    return twice;
}

template <class S>
struct LuneSearch {
    const Chain<S>& c1;
    const Chain<S>& c2;
    const std::vector<Crossing<S>>& xs;
    S SQ;
    long m1, m2;

    // Lifted coordinates along both curves.  A closed second curve lifts to
    // one periodic line, so every crossing has a lift per period; a fibre
    // lifts to disjoint copies and each crossing meets x's copy once.
    std::vector<long> rank1, rank2;  // order of each crossing along either chain

    // segment index first, then the order inside the segment
    struct Pos {
        long s, r;
        bool operator<(const Pos& o) const { return s != o.s ? s < o.s : r < o.r; }
    };
    struct Lift {
        Pos a, b;
        std::size_t w;
        long j;
    };

    long seg1_of(std::size_t w, long j) const { return static_cast<long>(xs[w].seg1) + j * m1; }
    long seg2_of(std::size_t w, long j) const {
        return static_cast<long>(xs[w].seg2) + (c2.closed ? (xs[w].shift + j) * m2 : 0);
    }
    Lift lift(std::size_t w, long j) const { return {{seg1_of(w, j), rank1[w]}, {seg2_of(w, j), rank2[w]}, w, j}; }

    void rank_crossings() {
        auto by = [&](std::vector<long>& rank, auto seg, auto par) {
            std::vector<std::size_t> idx(xs.size());
            for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
            std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
                return seg(a) != seg(b) ? seg(a) < seg(b) : par(a) < par(b);
            });
            rank.assign(xs.size(), 0);
            for (std::size_t i = 0; i < idx.size(); ++i) rank[idx[i]] = static_cast<long>(i);
        };
        by(rank1, [&](std::size_t a) { return xs[a].seg1; }, [&](std::size_t a) -> const S& { return xs[a].t1; });
        by(rank2, [&](std::size_t a) { return xs[a].seg2; }, [&](std::size_t a) -> const S& { return xs[a].t2; });
    }

    Vec2<S> point1(const Lift& x) const {
        Vec2<S> a = lifted_vertex(c1, x.a.s, SQ), b = lifted_vertex(c1, x.a.s + 1, SQ);
        return a + (b - a) * xs[x.w].t1;
    }
    Vec2<S> point2(const Lift& x, long copy) const {
        Vec2<S> a = lifted_vertex(c2, x.b.s, SQ), b = lifted_vertex(c2, x.b.s + 1, SQ);
        Vec2<S> v = a + (b - a) * xs[x.w].t2;
        if (!c2.closed) v.q = v.q + SQ * S(Rational(copy));
        return v;
    }
    // both corners are the same point on either curve
    void check_closes(const Lift& x, const Lift& y) const {
        const long copy = xs[x.w].shift;
        for (const Lift* z : {&x, &y}) {
            Vec2<S> u = point1(*z), v = point2(*z, copy);
            if (sign_of(u.q - v.q) != 0 || sign_of(u.p - v.p) != 0) throw Error("internal: lune boundary does not close");
        }
    }

    std::vector<Vec2<S>> loop(const Lift& x, const Lift& y) const {
        auto alpha = lifted_path(c1, SQ, x.a.s, xs[x.w].t1, y.a.s, xs[y.w].t1);
        auto beta = lifted_path(c2, SQ, y.b.s, xs[y.w].t2, x.b.s, xs[x.w].t2);
        if (!c2.closed) {
            S off = SQ * S(Rational(xs[x.w].shift));
            for (auto& v : beta) v.q = v.q + off;
        }
        std::vector<Vec2<S>> poly(alpha.begin(), alpha.end());
        poly.insert(poly.end(), beta.begin() + 1, beta.end() - 1);
        return poly;
    }

    // sign of dir1 x dir2 at a crossing, read off its degree
    int orient(std::size_t w) const { return xs[w].degree == 1 ? 1 : -1; }

    // Both corners turn towards the side of positive winding.
    bool convex_corners(const Lift& x, const Lift& y, int sigma) const {
        const int f = (y.a < x.a ? -1 : 1) * (y.b < x.b ? -1 : 1);
        return f * orient(x.w) * sigma > 0 && -f * orient(y.w) * sigma > 0;
    }

    // Winding numbers of the candidate loop next to the lifted first curve.
    // A point just beside it at position s winds once around every excursion
    // of the second arc to that side whose feet bracket s, so the numbers of
    // all faces touching the first arc follow from crossing data alone.  A
    // loop with a self-crossing has no face away from the first arc.
    bool nonnegative_winding(const Lift& x, const Lift& y, const std::vector<Lift>& lifts, int sigma) const {
        const bool fwd2 = x.b < y.b;
        std::vector<const Lift*> nodes{&x};
        for (const Lift& z : lifts)
            if (fwd2 ? (x.b < z.b && z.b < y.b) : (y.b < z.b && z.b < x.b)) nodes.push_back(&z);
        std::sort(nodes.begin() + 1, nodes.end(),
                  [&](const Lift* u, const Lift* v) { return fwd2 ? u->b < v->b : v->b < u->b; });
        nodes.push_back(&y);
        struct Excursion {
            Pos lo, hi;
            int side, weight;
        };
        std::vector<Excursion> ex;
        for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
            const Lift& c = *nodes[i];
            const Lift& n = *nodes[i + 1];
            int side = fwd2 ? orient(c.w) : -orient(c.w);  // +1: left of the first curve
            int weight = n.a < c.a ? 1 : -1;
            if (side > 0) weight = -weight;
            ex.push_back({n.a < c.a ? n.a : c.a, n.a < c.a ? c.a : n.a, side, weight});
        }
        const Pos lo = x.a < y.a ? x.a : y.a, hi = x.a < y.a ? y.a : x.a;
        std::vector<Pos> cuts{lo, hi};
        for (const auto& e : ex)
            for (const Pos* s : {&e.lo, &e.hi})
                if (lo < *s && *s < hi) cuts.push_back(*s);
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            if (!(cuts[i] < cuts[i + 1])) continue;
            int left = 0, right = 0;
            for (const auto& e : ex)
                if (!(cuts[i] < e.lo) && !(e.hi < cuts[i + 1])) (e.side > 0 ? left : right) += e.weight;
            if (left * sigma < 0 || right * sigma < 0) return false;
        }
        return true;
    }
};

template <class S>
PairData<S> analyze(const Chain<S>& c1, const Chain<S>& c2, const Rational& period, bool limit, bool want_polygons) {
    PairData<S> data;
    data.crossings = find_crossings(c1, c2, period, limit);
    auto& xs = data.crossings;
    const std::size_t N = xs.size();
    if (N == 0) throw UnsupportedPair("the curves do not intersect");
    check_distinct_along(xs, 1, limit);
    check_distinct_along(xs, 2, limit);

    // Lunes live in the universal cover.  A candidate joins a lift of x to a
    // lift of y along both curves; its boundary is embedded exactly when no
    // third lifted crossing lies between them on both arcs, and embedded
    // candidates with convex corners are lunes.
    using Search = LuneSearch<S>;
    using Lift = typename Search::Lift;
    Search search{c1, c2, xs, S(period), static_cast<long>(c1.segments()), static_cast<long>(c2.segments()), {}, {}};
    search.rank_crossings();
    long kmin = 0, kmax = 0;
    for (const auto& c : xs) {
        kmin = std::min(kmin, c.shift);
        kmax = std::max(kmax, c.shift);
    }
    const long J = c2.closed ? kmax - kmin + 4 : 0;
    std::vector<std::map<std::size_t, int>> count(N);
    std::vector<long> level(N);  // equal actions share a level
    {
        std::vector<std::size_t> idx(N);
        for (std::size_t i = 0; i < N; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return xs[a].action < xs[b].action; });
        for (std::size_t i = 0; i < N; ++i)
            level[idx[i]] = i > 0 && !(xs[idx[i - 1]].action < xs[idx[i]].action) ? level[idx[i - 1]] : static_cast<long>(i);
    }

    for (std::size_t x = 0; x < N; ++x) {
        const Lift lx = search.lift(x, 0);
        std::vector<Lift> lifts;
        for (std::size_t w = 0; w < N; ++w) {
            if (!c2.closed) {
                if (w != x) lifts.push_back(search.lift(w, xs[x].shift - xs[w].shift));
                continue;
            }
            for (long j = -J - 2; j <= J + 2; ++j)
                if (w != x || j != 0) lifts.push_back(search.lift(w, j));
        }
        std::sort(lifts.begin(), lifts.end(), [](const Lift& u, const Lift& v) { return u.a < v.a; });
        auto split = std::partition_point(lifts.begin(), lifts.end(), [&](const Lift& u) { return u.a < lx.a; }) -
                     lifts.begin();
        auto sweep = [&](auto first, auto last) {
            std::optional<typename Search::Pos> above, below;
            for (auto it = first; it != last; ++it) {
                const Lift& u = *it;
                const bool up = lx.b < u.b;
                const bool embedded = up ? (!above || u.b < *above) : (!below || *below < u.b);
                if (u.w > x && (!c2.closed || std::labs(u.j) <= J)) {
                    const std::size_t y = u.w;
                    const int sigma = level[x] > level[y] ? 1 : level[x] < level[y] ? -1 : 0;
                    const bool odd = ((xs[x].degree - xs[y].degree) & 1) != 0;
                    if (embedded && sigma != 0 && search.convex_corners(lx, u, sigma)) {
                        if (!odd) throw UnsupportedPair("lune joins generators of equal parity");
                        search.check_closes(lx, u);
                        std::size_t hi = sigma > 0 ? x : y, lo = sigma > 0 ? y : x;
                        count[hi][lo] ^= 1;
                        if (want_polygons) {
                            auto poly = search.loop(lx, u);
                            if (!(twice_area(poly) == (xs[x].action - xs[y].action) * S(2)))
                                throw UnsupportedPair("lune area does not match the action gap");
                            if (sigma < 0) std::reverse(poly.begin(), poly.end());
                            data.lunes.push_back({hi, lo, (xs[hi].action - xs[lo].action), std::move(poly)});
                        }
                    } else if (!embedded && odd && sigma != 0 && search.convex_corners(lx, u, sigma) &&
                               search.nonnegative_winding(lx, u, lifts, sigma)) {
                        throw UnsupportedPair("an immersed lune candidate cannot be decided");
                    }
                }
                if (up) {
                    if (!above || u.b < *above) above = u.b;
                } else {
                    if (!below || *below < u.b) below = u.b;
                }
            }
        };
        sweep(lifts.begin() + split, lifts.end());
        sweep(std::make_reverse_iterator(lifts.begin() + split), lifts.rend());
    }
    data.boundary.assign(N, {});
    for (std::size_t x = 0; x < N; ++x)
        for (auto [y, odd] : count[x])
            if (odd) data.boundary[x].push_back(y);

    // d^2 = 0 and the degree rule, mod 2
    for (std::size_t x = 0; x < N; ++x) {
        std::map<std::size_t, int> cnt;
        for (std::size_t y : data.boundary[x]) {
            if (((xs[x].degree - xs[y].degree) & 1) == 0)
                throw UnsupportedPair("lune joins generators of equal parity");
            for (std::size_t z : data.boundary[y]) cnt[z] ^= 1;
        }
        for (auto [z, odd] : cnt)
            if (odd) throw UnsupportedPair("lune count gives d^2 != 0");
    }

    std::vector<S> action;
    action.reserve(N);
    for (const auto& c : xs) action.push_back(c.action);
    data.pairing = reduce_filtration(action, data.boundary);
    int ess[2] = {0, 0};
    for (const auto& p : data.pairing)
        if (!p.death) ++ess[xs[p.birth].degree & 1];
    if (c2.closed) {
        if (ess[0] != 1 || ess[1] != 1)
            throw UnsupportedPair("cohomology ranks (" + std::to_string(ess[0]) + ", " + std::to_string(ess[1]) +
                                  ") differ from those of the circle");
    } else {
        if (ess[0] + ess[1] != 1)
            throw UnsupportedPair("fibre cohomology has rank " + std::to_string(ess[0] + ess[1]));
    }
    return data;
}

}  // namespace lagspec::detail
