#include "routing.hpp"

#include "lagspec/errors.hpp"
#include "lagspec/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace lagspec::detail {

namespace {

struct SegSet {
    struct Seg {
        Point a, b;
        std::size_t index;
        bool primary;  // the unshifted copy
        std::array<double, 4> box;
    };
    std::vector<Seg> segs;
};

std::array<double, 4> dbox(const Point& a, const Point& b) {
    double aq = a.q.get_d(), bq = b.q.get_d(), ap = a.p.get_d(), bp = b.p.get_d();
    const double m = 1e-9;
    return {std::min(aq, bq) - m, std::max(aq, bq) + m, std::min(ap, bp) - m, std::max(ap, bp) + m};
}

bool overlap(const std::array<double, 4>& x, const std::array<double, 4>& y) {
    return !(x[1] < y[0] || y[1] < x[0] || x[3] < y[2] || y[3] < x[2]);
}

Point lifted(const Rational& Q, const std::vector<Point>& lift, long i) {
    const long n = static_cast<long>(lift.size());
    long k = i >= 0 ? i / n : -((-i + n - 1) / n);
    Point v = lift[static_cast<std::size_t>(i - k * n)];
    v.q += Q * k;
    return v;
}

SegSet segments_of(const Rational& Q, const std::vector<Point>& lift) {
    SegSet s;
    const long n = static_cast<long>(lift.size());
    for (long k = -1; k <= 1; ++k)
        for (long i = 0; i < n; ++i) {
            Point a = lifted(Q, lift, i), b = lifted(Q, lift, i + 1);
            a.q += Q * k;
            b.q += Q * k;
            s.segs.push_back({a, b, static_cast<std::size_t>(i), k == 0, dbox(a, b)});
        }
    return s;
}

// any contact with a curve segment, except the host segment when skip_host
bool hits_curve(const Point& a, const Point& b, const SegSet& set, std::optional<std::size_t> skip_host) {
    auto bx = dbox(a, b);
    for (const auto& s : set.segs) {
        if (!overlap(bx, s.box)) continue;
        if (skip_host && s.primary && s.index == *skip_host) continue;
        if (intersect_segments<Rational>(a, b, s.a, s.b).kind != SegmentHit::none) return true;
    }
    return false;
}

bool hits_boxes(const Point& a, const Point& b, const std::vector<SupBox>& boxes) {
    for (const auto& bx : boxes)
        if (segment_meets_closed_box(a, b, bx)) return true;
    return false;
}

bool polyline_simple(const std::vector<Point>& pts) {
    const std::size_t m = pts.size();
    for (std::size_t i = 0; i + 1 < m; ++i)
        for (std::size_t j = i + 2; j + 1 < m; ++j)
            if (intersect_segments<Rational>(pts[i], pts[i + 1], pts[j], pts[j + 1]).kind != SegmentHit::none)
                return false;
    for (std::size_t i = 0; i + 2 < m; ++i) {
        Point d0 = pts[i + 1] - pts[i], d1 = pts[i + 2] - pts[i + 1];
        if (d0 == Point{0, 0} || d1 == Point{0, 0}) return false;
        if (cross(d0, d1) == 0 && dot(d0, d1) < 0) return false;
    }
    return true;
}

std::optional<std::size_t> diagonal_host(const Rational& Q, const std::vector<Point>& lift, const Rational& lo,
                                         const Rational& hi) {
    const long n = static_cast<long>(lift.size());
    for (long i = 0; i < n; ++i) {
        Point a = lifted(Q, lift, i), b = lifted(Q, lift, i + 1);
        if (a.p != a.q || b.p != b.q || !(a.q < b.q)) continue;
        if (a.q < lo && hi < b.q) return static_cast<std::size_t>(i);
    }
    return std::nullopt;
}

bool inside_open(const Square& K, const Point& x) { return K.contains_open(x); }

}  // namespace

bool segment_meets_closed_box(const Point& a, const Point& b, const SupBox& box) {
    Rational t0 = 0, t1 = 1;
    auto clip = [&](const Rational& den, const Rational& num) {
        // den * t <= num
        if (den == 0) return num >= 0;
        Rational t = num / den;
        if (den > 0) {
            if (t < t1) t1 = t;
        } else if (t > t0) {
            t0 = t;
        }
        return t0 <= t1;
    };
    Point d = b - a;
    const Rational qlo = box.center.q - box.half, qhi = box.center.q + box.half;
    const Rational plo = box.center.p - box.half, phi = box.center.p + box.half;
    return clip(-d.q, a.q - qlo) && clip(d.q, qhi - a.q) && clip(-d.p, a.p - plo) && clip(d.p, phi - a.p);
}

Rational sup_distance(const Point& z, const Point& a, const Point& b) {
    Point d = b - a;
    std::vector<Rational> ts{Rational(0), Rational(1)};
    // q(t)-zq = +-(p(t)-zp)
    for (int sg : {1, -1}) {
        Rational den = d.q - sg * d.p;
        if (den != 0) {
            Rational t = (z.q - a.q - sg * (z.p - a.p)) / den;
            if (t > 0 && t < 1) ts.push_back(t);
        }
    }
    Rational best = -1;
    for (const auto& t : ts) {
        Rational v = max_of(abs(a.q + t * d.q - z.q), abs(a.p + t * d.p - z.p));
        if (best < 0 || v < best) best = v;
    }
    return best;
}

Rational sqrt_upper(const Rational& x) {
    const long den = 1L << 20;
    double guess = std::sqrt(std::max(0.0, x.get_d()));
    Rational r(static_cast<long>(std::ceil(guess * static_cast<double>(den))), den);
    while (r * r < x) r += Rational(1, den);
    while (r > 0 && (r - Rational(1, den)) * (r - Rational(1, den)) >= x) r -= Rational(1, den);
    return r;
}

std::vector<Point> splice(const std::vector<Point>& lift, std::size_t host, const std::vector<Point>& inner) {
    std::vector<Point> out(lift.begin(), lift.begin() + static_cast<long>(host) + 1);
    out.insert(out.end(), inner.begin(), inner.end());
    out.insert(out.end(), lift.begin() + static_cast<long>(host) + 1, lift.end());
    return out;
}

std::optional<Detour> route_corridor(const PLCurve& l, const Point& z, bool upward, const Rational& epsilon,
                                     const Rational& R, const Rational& g, const Square& K,
                                     const std::vector<SupBox>& keep_out) {
    const int sigma = upward ? 1 : -1;
    const Rational& Q = l.period();
    const Rational zq = z.q;
    const Rational yb = sigma * z.p - R - g;  // head base in the reflected frame
    const Rational lmin = yb - sigma * zq;
    if (lmin <= 0) return std::nullopt;
    const Rational wmax = epsilon / (4 * lmin);
    const Rational pad = wmax / 2 + g;
    SegSet segs = segments_of(Q, l.vertices());

    std::set<Rational> xs{zq}, hs{yb - pad};
    const Rational kq_lo = K.q0, kq_hi = K.q0 + K.side;
    for (const auto& s : segs.segs) {
        for (const Point* v : {&s.a, &s.b}) {
            if (v->q < kq_lo || v->q > kq_hi) continue;
            xs.insert(v->q - pad);
            xs.insert(v->q + pad);
            hs.insert(sigma * v->p - pad);
            hs.insert(sigma * v->p + pad);
        }
    }
    for (const auto& b : keep_out) {
        xs.insert(b.center.q - b.half - pad);
        xs.insert(b.center.q + b.half + pad);
        hs.insert(sigma * b.center.p - b.half - pad);
        hs.insert(sigma * b.center.p + b.half + pad);
    }

    struct Cand {
        double len;
        Rational x;
    };
    std::vector<Cand> cands;
    for (const auto& x : xs) {
        if (x <= kq_lo || x >= kq_hi) continue;
        Rational len = yb - sigma * x + abs(zq - x);
        if (len <= 0) continue;
        cands.push_back({len.get_d(), x});
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.len < b.len; });

    auto T = [&](const Point& p) { return Point{p.q, sigma * p.p}; };
    auto axis_dir = [](const Point& a, const Point& b) {
        Point d = b - a;
        return Point{Rational(sgn(d.q)), Rational(sgn(d.p))};
    };

    auto attempt = [&](const std::vector<Point>& centre) -> std::optional<Detour> {
        Rational len = 0;
        for (std::size_t i = 0; i + 1 < centre.size(); ++i) {
            Point d = centre[i + 1] - centre[i];
            if (d.q != 0 && d.p != 0) return std::nullopt;
            if (d == Point{0, 0}) return std::nullopt;
            len += abs(d.q) + abs(d.p);
        }
        const Rational w = epsilon / (4 * len);
        const Rational hw = w / 2;
        const std::size_t t = centre.size() - 1;
        std::vector<Point> n(t);
        for (std::size_t i = 0; i < t; ++i) {
            Point d = axis_dir(centre[i], centre[i + 1]);
            n[i] = {-d.p, d.q};
        }
        std::vector<Point> west, east;
        const Rational x = centre[0].q;
        west.push_back({x - hw, sigma * (x - hw)});
        east.push_back({x + hw, sigma * (x + hw)});
        for (std::size_t i = 1; i < t; ++i) {
            Point off = (n[i - 1] + n[i]) * hw;
            west.push_back(centre[i] + off);
            east.push_back(centre[i] - off);
        }
        west.push_back(centre[t] + n[t - 1] * hw);
        east.push_back(centre[t] - n[t - 1] * hw);
        // walls must run parallel to the centre line
        for (const auto* wall : {&west, &east})
            for (std::size_t i = 0; i + 1 < wall->size(); ++i) {
                Point d = (*wall)[i + 1] - (*wall)[i];
                Point c = centre[i + 1] - centre[i];
                if (cross(d, c) != 0 || dot(d, c) <= 0) return std::nullopt;
            }
        std::vector<Point> pts = west;
        pts.push_back({zq - R, yb});
        pts.push_back({zq - R, sigma * z.p});
        pts.push_back({zq + R, sigma * z.p});
        pts.push_back({zq + R, yb});
        for (auto it = east.rbegin(); it != east.rend(); ++it) pts.push_back(*it);
        for (auto& p : pts) p = T(p);
        // drop interior points that are collinear with their neighbours
        std::vector<Point> clean{pts.front()};
        for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
            Point d0 = pts[i] - clean.back(), d1 = pts[i + 1] - pts[i];
            if (cross(d0, d1) == 0 && dot(d0, d1) > 0) continue;
            clean.push_back(pts[i]);
        }
        clean.push_back(pts.back());
        pts.swap(clean);

        for (const auto& p : pts)
            if (!inside_open(K, p)) return std::nullopt;
        auto host = diagonal_host(Q, l.vertices(), pts.front().q, pts.back().q);
        if (!host) return std::nullopt;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            bool foot = i == 0 || i + 2 == pts.size();
            if (hits_curve(pts[i], pts[i + 1], segs, foot ? std::optional<std::size_t>(*host) : std::nullopt))
                return std::nullopt;
            if (hits_boxes(pts[i], pts[i + 1], keep_out)) return std::nullopt;
        }
        if (!polyline_simple(pts)) return std::nullopt;
        return Detour{*host, pts, w, len};
    };

    std::size_t budget = 40000;
    for (const auto& c : cands) {
        if (c.x == zq) {
            if (auto d = attempt({{zq, sigma * zq}, {zq, yb}})) return d;
            continue;
        }
        for (const auto& h : hs) {
            if (budget-- == 0) return std::nullopt;
            if (h <= sigma * c.x || h >= yb) continue;
            if (auto d = attempt({{c.x, sigma * c.x}, {c.x, h}, {zq, h}, {zq, yb}})) return d;
        }
    }
    return std::nullopt;
}

std::optional<Notch> place_notch(const Rational& period, const std::vector<Point>& lift, const Rational& near_q,
                                 bool upward, const Rational& tongue_area, const Rational& gap, const Square& K,
                                 const std::vector<SupBox>& keep_out) {
    SegSet segs = segments_of(period, lift);
    const Rational base = 4 * sqrt_upper(tongue_area);
    const int tau = upward ? 1 : -1;  // apex offset (d, -d) below the diagonal for upward tongues
    for (const Rational& width : std::vector<Rational>{base, base / 2, base * 2, base / 4}) {
        for (int j = 0; j < 48; ++j) {
            for (int side : {1, -1}) {
                Rational m = near_q + side * (gap + width / 2 + Rational(j) * width / 2);
                Rational a = m - width / 2, b = m + width / 2;
                auto host = diagonal_host(period, lift, a, b);
                if (!host) continue;
                auto with_apex = [&](const Rational& d) {
                    return splice(lift, *host, {{a, a}, {m + tau * d, m - tau * d}, {b, b}});
                };
                Rational l0 = loop_action(period, with_apex(0));
                Rational l1 = loop_action(period, with_apex(1));
                if (l1 == l0) continue;
                Rational d = -l0 / (l1 - l0);
                if (d <= 0) continue;
                Point A{a, a}, B{b, b}, apex{m + tau * d, m - tau * d};
                if (!inside_open(K, A) || !inside_open(K, B) || !inside_open(K, apex)) continue;
                if (hits_curve(A, apex, segs, *host) || hits_curve(apex, B, segs, *host)) continue;
                if (hits_boxes(A, apex, keep_out) || hits_boxes(apex, B, keep_out)) continue;
                return Notch{*host, A, apex, B, d};
            }
        }
    }
    return std::nullopt;
}

}  // namespace lagspec::detail
