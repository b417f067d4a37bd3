#include "lagspec/support_probe.hpp"

#include "lagspec/errors.hpp"
#include "lagspec/floer.hpp"
#include "lagspec/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace lagspec {

std::vector<Point> Grid::points() const {
    std::vector<Point> out;
    if (nq == 0 || np == 0) return out;
    const Rational dq = (q1 - q0) / static_cast<unsigned long>(nq);
    const Rational dp = (p1 - p0) / static_cast<unsigned long>(np);
    for (std::size_t j = 0; j < np; ++j)
        for (std::size_t i = 0; i < nq; ++i)
            out.push_back({q0 + dq * (Rational(static_cast<unsigned long>(i)) + Rational(1, 2)),
                           p0 + dp * (Rational(static_cast<unsigned long>(j)) + Rational(1, 2))});
    return out;
}

namespace {

struct Piece {
    std::size_t segment;
    long shift;
    Rational t0, t1;  // parameters of the clipped part on the segment
};

// Portion of [a,b] inside the open box; empty optional if none.
std::optional<std::pair<Rational, Rational>> clip_open(const Point& a, const Point& b, const Point& z,
                                                       const Rational& eps) {
    Rational lo = 0, hi = 1;
    Point d = b - a;
    auto side = [&](const Rational& coord0, const Rational& dc, const Rational& bound_lo,
                    const Rational& bound_hi) {
        // bound_lo < coord0 + t dc < bound_hi
        if (dc == 0) return bound_lo < coord0 && coord0 < bound_hi;
        Rational ta = (bound_lo - coord0) / dc, tb = (bound_hi - coord0) / dc;
        if (tb < ta) std::swap(ta, tb);
        lo = max_of(lo, ta);
        hi = min_of(hi, tb);
        return lo < hi;
    };
    if (!side(a.q, d.q, z.q - eps, z.q + eps)) return std::nullopt;
    if (!side(a.p, d.p, z.p - eps, z.p + eps)) return std::nullopt;
    return std::make_pair(lo, hi);
}

std::optional<Piece> longest_piece(const PLCurve& l, const Point& z, const Rational& eps) {
    const Rational& Q = l.period();
    std::optional<Piece> best;
    Rational best_len = 0;
    const long n = static_cast<long>(l.size());
    for (long i = 0; i < n; ++i) {
        Point a = l.vertex(i), b = l.vertex(i + 1);
        Rational lo = min_of(a.q, b.q), hi = max_of(a.q, b.q);
        Rational kmin = ceil_of((z.q - eps - hi) / Q) - 1, kmax = floor_of((z.q + eps - lo) / Q) + 1;
        for (Rational k = kmin; k <= kmax; k += 1) {
            Point as{a.q + k * Q, a.p}, bs{b.q + k * Q, b.p};
            auto c = clip_open(as, bs, z, eps);
            if (!c) continue;
            Point d = bs - as;
            Rational len = max_of(abs(d.q), abs(d.p)) * (c->second - c->first);
            if (!best || len > best_len) {
                best = Piece{static_cast<std::size_t>(i), k.get_num().get_si(), c->first, c->second};
                best_len = len;
            }
        }
    }
    return best;
}

bool in_open_box(const Point& x, const Point& z, const Rational& eps) {
    return abs(x.q - z.q) < eps && abs(x.p - z.p) < eps;
}

// new segments may touch the rest of the curve only where they attach
bool locally_embedded(const PLCurve& l, const Piece& piece, const std::vector<Point>& path) {
    const Rational& Q = l.period();
    const long n = static_cast<long>(l.size());
    Point ha = l.vertex(static_cast<long>(piece.segment)), hb = l.vertex(static_cast<long>(piece.segment) + 1);
    ha.q += Q * piece.shift;
    hb.q += Q * piece.shift;
    for (std::size_t s = 0; s + 1 < path.size(); ++s) {
        const Point& a = path[s];
        const Point& b = path[s + 1];
        for (long i = 0; i < n; ++i) {
            Point c = l.vertex(i), d = l.vertex(i + 1);
            for (long k = -1; k <= 1; ++k) {
                Point cs{c.q + Q * (k + piece.shift), c.p}, ds{d.q + Q * (k + piece.shift), d.p};
                if (max_of(a.q, b.q) < min_of(cs.q, ds.q) || max_of(cs.q, ds.q) < min_of(a.q, b.q)) continue;
                if (max_of(a.p, b.p) < min_of(cs.p, ds.p) || max_of(cs.p, ds.p) < min_of(a.p, b.p)) continue;
                bool host = k == 0 && i == static_cast<long>(piece.segment);
                if (host) {
                    // only the retained halves of the host, touched at the endpoints
                    Point rest_a[2] = {ha, path.front()};
                    Point rest_b[2] = {path.back(), hb};
                    for (auto* rest : {rest_a, rest_b}) {
                        if (rest[0] == rest[1]) continue;
                        auto hit = intersect_segments<Rational>(a, b, rest[0], rest[1]);
                        if (hit.kind == SegmentHit::none) continue;
                        bool at_start = s == 0 && rest == rest_a;
                        bool at_end = s + 2 == path.size() && rest == rest_b;
                        if (!(at_start || at_end)) return false;
                        // the first/last push leaves the host line, so contact is the endpoint only
                        Point dir = b - a, hd = hb - ha;
                        if (cross(dir, hd) == 0) return false;
                    }
                    continue;
                }
                if (intersect_segments<Rational>(a, b, cs, ds).kind != SegmentHit::none) return false;
            }
        }
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        for (std::size_t j = i + 2; j + 1 < path.size(); ++j)
            if (intersect_segments<Rational>(path[i], path[i + 1], path[j], path[j + 1]).kind != SegmentHit::none)
                return false;
    return true;
}

}  // namespace

ProbeReport probe(const PLCurve& l, const Point& z, const Rational& eps, std::size_t family_size,
                  std::optional<Rational> stop_above) {
    if (eps <= 0) throw PreconditionError("probe radius must be positive");
    ProbeReport rep;
    rep.z = z;
    rep.radius = eps;
    auto piece = longest_piece(l, z, eps);
    if (!piece) return rep;

    const Rational& Q = l.period();
    Point a = l.vertex(static_cast<long>(piece->segment)), b = l.vertex(static_cast<long>(piece->segment) + 1);
    a.q += Q * piece->shift;
    b.q += Q * piece->shift;
    Point d = b - a;
    const Rational span = piece->t1 - piece->t0;
    const Rational ta = piece->t0 + span / 8, tb = piece->t1 - span / 8;
    const Point Pa = a + d * ta, Pb = a + d * tb, M = (Pa + Pb) * Rational(1, 2);

    struct Dir {
        Point v;
        Rational weight;
    };
    std::vector<Dir> dirs;
    const Point base[8] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
    for (const auto& v : base) {
        Rational c = cross(d, v);
        if (c == 0) continue;
        dirs.push_back({v, abs(c)});
    }
    std::stable_sort(dirs.begin(), dirs.end(), [](const Dir& x, const Dir& y) { return x.weight > y.weight; });

    std::size_t budget = family_size;
    for (const Rational& scale : {Rational(1), Rational(1, 2), Rational(1, 4), Rational(1, 8)}) {
        for (const auto& dir : dirs) {
            if (budget == 0) return rep;
            --budget;
            // largest amplitude keeping every pushed corner inside the box
            Rational kmax = -1;
            for (const Point* P : {&Pa, &M, &Pb})
                for (int sg : {1, -1})
                    for (int coord = 0; coord < 2; ++coord) {
                        Rational vc = sg * (coord == 0 ? dir.v.q : dir.v.p);
                        if (vc == 0) continue;
                        Rational pc = coord == 0 ? P->q : P->p;
                        Rational zc = coord == 0 ? z.q : z.p;
                        Rational room = (vc > 0 ? Rational(zc + eps - pc) : Rational(zc - eps - pc)) / vc;
                        if (kmax < 0 || room < kmax) kmax = room;
                    }
            if (kmax <= 0) continue;
            Rational k = kmax * Rational(15, 16) * scale;
            Point kv = dir.v * k;
            std::vector<Point> path{Pa, Pa + kv, M + kv, M - kv, Pb - kv, Pb};
            bool inside = true;
            for (const auto& p : path) inside = inside && in_open_box(p, z, eps);
            if (!inside || !locally_embedded(l, *piece, path)) continue;

            std::vector<Point> inner(path.begin(), path.end());
            for (auto& p : inner) p.q -= Q * piece->shift;
            std::vector<Point> lift = l.vertices();
            lift.insert(lift.begin() + static_cast<long>(piece->segment) + 1, inner.begin(), inner.end());
            PLCurve pushed(Q, lift, l.brane_constant(), PLCurve::Check::local);
            Rational g = gamma_pair(pushed, l, Genericity::limit);
            ++rep.evaluated;
            if (g > rep.gamma_lower_bound) {
                rep.gamma_lower_bound = g;
                rep.witness = ProbeWitness{piece->segment, dir.v, k, g, inner};
            }
            rep.positive = rep.gamma_lower_bound > 0;
            if (stop_above && rep.gamma_lower_bound > *stop_above) return rep;
        }
    }
    return rep;
}

Rational density(const PLCurve& l, const Point& z, const Rational& eps, std::size_t family_size) {
    return probe(l, z, eps, family_size).gamma_lower_bound;
}

std::vector<SupportPoint> estimate_support(const PLCurve& l, const Grid& grid, const Rational& eps,
                                           const Rational& delta, std::size_t family_size) {
    std::vector<SupportPoint> out;
    for (const auto& z : grid.points()) {
        ProbeReport r = probe(l, z, eps, family_size, delta);
        if (r.gamma_lower_bound > delta) out.push_back({z, std::move(r)});
    }
    return out;
}

PLCurve figure_one_bump(const Rational& period, const Rational& q0, const Rational& eps) {
    if (eps <= 0 || !(2 * eps < period)) throw PreconditionError("bump radius must lie in (0, period/2)");
    PLFunction f{period, {q0 - eps, q0, q0 + eps}, {Rational(0), eps * eps, Rational(0)}};
    Rational shift = floor_of(f.knots.front() / period) * period;
    for (auto& k : f.knots) k -= shift;
    if (!(f.knots.back() < f.knots.front() + period)) throw PreconditionError("bump does not fit in one period");
    if (f.knots.back() >= period) {
        // rotate so the knots lie in [0, period)
        std::vector<Rational> ks, vs;
        for (std::size_t i = 0; i < 3; ++i) {
            std::size_t j = (i + 1) % 3;
            Rational k = f.knots[j];
            if (k >= period) k -= period;
            ks.push_back(k);
            vs.push_back(f.values[j]);
        }
        std::vector<std::size_t> order{0, 1, 2};
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return ks[x] < ks[y]; });
        PLFunction g{period, {}, {}};
        for (auto i : order) {
            g.knots.push_back(ks[i]);
            g.values.push_back(vs[i]);
        }
        return graph_of_differential(g);
    }
    return graph_of_differential(f);
}

double density_exponent(const std::vector<Rational>& eps, const std::vector<Rational>& densities) {
    if (eps.size() != densities.size() || eps.size() < 2) throw PreconditionError("need at least two samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(eps.size());
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (densities[i] <= 0) throw PreconditionError("density must be positive to fit an exponent");
        double x = std::log(eps[i].get_d()), y = std::log(densities[i].get_d());
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace lagspec
