#include "lagspec/curve.hpp"

#include "lagspec/errors.hpp"
#include "lagspec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace lagspec {

Rational cross(const Point& a, const Point& b) { return a.q * b.p - a.p * b.q; }
Rational dot(const Point& a, const Point& b) { return a.q * b.q + a.p * b.p; }

namespace {

Point lift_vertex(const Rational& period, const std::vector<Point>& lift, long i) {
    const long n = static_cast<long>(lift.size());
    long k = i >= 0 ? i / n : -((-i + n - 1) / n);
    long r = i - k * n;
    Point v = lift[static_cast<std::size_t>(r)];
    v.q += period * k;
    return v;
}

struct Box {
    double q0, q1, p0, p1;
};

Box segment_box(const Point& a, const Point& b) {
    double aq = a.q.get_d(), bq = b.q.get_d(), ap = a.p.get_d(), bp = b.p.get_d();
    double slack = 1e-9 * (1.0 + std::max({std::fabs(aq), std::fabs(bq), std::fabs(ap), std::fabs(bp)}));
    return {std::min(aq, bq) - slack, std::max(aq, bq) + slack, std::min(ap, bp) - slack,
            std::max(ap, bp) + slack};
}

}  // namespace

Rational loop_action(const Rational& period, const std::vector<Point>& lift) {
    Rational total = 0;
    const long n = static_cast<long>(lift.size());
    for (long i = 0; i < n; ++i) {
        Point a = lift_vertex(period, lift, i), b = lift_vertex(period, lift, i + 1);
        total += (a.p + b.p) * (b.q - a.q) / 2;
    }
    return total;
}

std::optional<std::string> embedding_defect(const Rational& period, const std::vector<Point>& lift) {
    const long n = static_cast<long>(lift.size());
    const double Q = period.get_d();
    std::vector<Box> boxes;
    for (long i = 0; i < n; ++i)
        boxes.push_back(segment_box(lift_vertex(period, lift, i), lift_vertex(period, lift, i + 1)));
    for (long i = 0; i < n; ++i) {
        Point a0 = lift_vertex(period, lift, i), a1 = lift_vertex(period, lift, i + 1);
        for (long j = i; j < n; ++j) {
            const Box& A = boxes[static_cast<std::size_t>(i)];
            const Box& B = boxes[static_cast<std::size_t>(j)];
            if (A.p1 < B.p0 || B.p1 < A.p0) continue;
            long kmin = static_cast<long>(std::floor((A.q0 - B.q1) / Q)) - 1;
            long kmax = static_cast<long>(std::ceil((A.q1 - B.q0) / Q)) + 1;
            for (long k = kmin; k <= kmax; ++k) {
                long gj = j + k * n;
                if (gj == i) continue;
                if (B.q1 + k * Q < A.q0 || A.q1 < B.q0 + k * Q) continue;
                Point b0 = lift_vertex(period, lift, gj), b1 = lift_vertex(period, lift, gj + 1);
                if (gj == i + 1 || gj == i - 1) {
                    Point da = a1 - a0, db = b1 - b0;
                    if (gj == i - 1) std::swap(da, db);
                    if (cross(da, db) == 0 && dot(da, db) < 0)
                        return "segments " + std::to_string(i) + " and " + std::to_string(j) + " fold back";
                    if (n == 2 && cross(da, db) == 0)
                        return "degenerate two-segment loop";
                    continue;
                }
                auto hit = intersect_segments<Rational>(a0, a1, b0, b1);
                if (hit.kind != SegmentHit::none)
                    return "segments " + std::to_string(i) + " and " + std::to_string(j) + " meet";
            }
        }
    }
    return std::nullopt;
}

PLCurve::PLCurve(Rational period, std::vector<Point> lift, Rational brane_constant, Check check)
    : period_(std::move(period)), vertices_(std::move(lift)), brane_(std::move(brane_constant)) {
    if (period_ <= 0) throw PreconditionError("curve period must be positive");
    if (vertices_.empty()) throw PreconditionError("curve needs at least one vertex");
    canonicalize();
    Rational area = loop_action(period_, vertices_);
    if (area != 0) throw PreconditionError("curve is not exact: loop action " + to_string(area));
    if (check == Check::full) {
        if (auto defect = embedding_defect(period_, vertices_))
            throw PreconditionError("curve is not embedded: " + *defect);
    }
    const std::size_t n = vertices_.size();
    primitive_.resize(n + 1);
    primitive_[0] = brane_;
    for (std::size_t i = 0; i < n; ++i) {
        Point a = vertex(static_cast<long>(i)), b = vertex(static_cast<long>(i) + 1);
        primitive_[i + 1] = primitive_[i] + (a.p + b.p) * (b.q - a.q) / 2;
    }
}

void PLCurve::canonicalize() {
    const long n = static_cast<long>(vertices_.size());
    for (long i = 0; i < n; ++i)
        if (lift_vertex(period_, vertices_, i) == lift_vertex(period_, vertices_, i + 1))
            throw PreconditionError("curve has a zero-length segment at vertex " + std::to_string(i));
    if (n == 1) return;

    std::vector<Rational> prim(static_cast<std::size_t>(n));
    prim[0] = brane_;
    for (long i = 0; i + 1 < n; ++i) {
        Point a = vertices_[static_cast<std::size_t>(i)], b = vertices_[static_cast<std::size_t>(i + 1)];
        prim[static_cast<std::size_t>(i + 1)] = prim[static_cast<std::size_t>(i)] + (a.p + b.p) * (b.q - a.q) / 2;
    }
    std::vector<long> kept;
    for (long i = 0; i < n; ++i) {
        Point prev = lift_vertex(period_, vertices_, i - 1);
        Point cur = lift_vertex(period_, vertices_, i);
        Point next = lift_vertex(period_, vertices_, i + 1);
        Point d0 = cur - prev, d1 = next - cur;
        if (cross(d0, d1) == 0 && dot(d0, d1) > 0) continue;
        kept.push_back(i);
    }
    if (kept.empty()) {
        // all vertices on one straight closed line
        kept.push_back(0);
    }
    if (static_cast<long>(kept.size()) == n) return;
    std::vector<Point> out;
    for (long i : kept) out.push_back(vertices_[static_cast<std::size_t>(i)]);
    brane_ = prim[static_cast<std::size_t>(kept.front())];
    vertices_ = std::move(out);
}

Point PLCurve::vertex(long i) const { return lift_vertex(period_, vertices_, i); }

std::optional<std::pair<std::size_t, Rational>> PLCurve::locate(const Point& x) const {
    const long n = static_cast<long>(vertices_.size());
    for (long i = 0; i < n; ++i) {
        Point a = vertex(i), b = vertex(i + 1);
        Rational lo = min_of(a.q, b.q), hi = max_of(a.q, b.q);
        Rational kmin = ceil_of((lo - x.q) / period_), kmax = floor_of((hi - x.q) / period_);
        for (Rational k = kmin; k <= kmax; k += 1) {
            Point y{x.q + k * period_, x.p};
            Point d = b - a, w = y - a;
            if (cross(d, w) != 0) continue;
            Rational t = dot(w, d) / dot(d, d);
            if (t < 0 || t > 1) continue;
            return std::make_pair(static_cast<std::size_t>(i), t);
        }
    }
    return std::nullopt;
}

Rational PLCurve::primitive(const Point& x) const {
    auto loc = locate(x);
    if (!loc) throw PreconditionError("point (" + to_string(x.q) + ", " + to_string(x.p) + ") is not on the curve");
    auto [i, t] = *loc;
    Point a = vertex(static_cast<long>(i)), b = vertex(static_cast<long>(i) + 1);
    Point d = b - a;
    return primitive_[i] + t * d.q * (a.p + t * d.p / 2);
}

Rational PLCurve::min_q() const {
    Rational m = vertices_[0].q;
    for (const auto& v : vertices_) m = min_of(m, v.q);
    return m;
}
Rational PLCurve::max_q() const {
    Rational m = vertices_[0].q + period_;
    for (const auto& v : vertices_) m = max_of(m, v.q);
    return m;
}
Rational PLCurve::min_p() const {
    Rational m = vertices_[0].p;
    for (const auto& v : vertices_) m = min_of(m, v.p);
    return m;
}
Rational PLCurve::max_p() const {
    Rational m = vertices_[0].p;
    for (const auto& v : vertices_) m = max_of(m, v.p);
    return m;
}

PLCurve zero_section(const Rational& period, const Rational& brane_constant, const Rational& base_q) {
    return PLCurve(period, {Point{base_q, 0}}, brane_constant);
}

PLCurve translate_brane(const PLCurve& l, const Rational& c) {
    return PLCurve(l.period(), l.vertices(), l.brane_constant() + c, PLCurve::Check::local);
}

PLCurve negate_curve(const PLCurve& l) {
    std::vector<Point> v = l.vertices();
    for (auto& x : v) x.p = -x.p;
    return PLCurve(l.period(), std::move(v), -l.brane_constant(), PLCurve::Check::local);
}

Rational PLFunction::slope(std::size_t i) const {
    const std::size_t m = knots.size();
    Rational q0 = knots[i], v0 = values[i];
    Rational q1 = i + 1 < m ? knots[i + 1] : knots[0] + period;
    Rational v1 = values[(i + 1) % m];
    return (v1 - v0) / (q1 - q0);
}

Rational PLFunction::operator()(const Rational& q) const {
    const std::size_t m = knots.size();
    Rational x = q - period * floor_of((q - knots[0]) / period);  // now knots[0] <= x < knots[0] + Q
    std::size_t i = m - 1;
    for (std::size_t k = 0; k + 1 < m; ++k)
        if (knots[k] <= x && x < knots[k + 1]) {
            i = k;
            break;
        }
    return values[i] + slope(i) * (x - knots[i]);
}

Rational PLFunction::min_value() const { return *std::min_element(values.begin(), values.end()); }
Rational PLFunction::max_value() const { return *std::max_element(values.begin(), values.end()); }

PLFunction difference(const PLFunction& f, const PLFunction& g) {
    if (f.period != g.period) throw PreconditionError("functions on circles of different length");
    std::set<Rational> ks;
    auto reduce = [&](const Rational& q) -> Rational { return q - f.period * floor_of(q / f.period); };
    for (const auto& k : f.knots) ks.insert(reduce(k));
    for (const auto& k : g.knots) ks.insert(reduce(k));
    PLFunction d{f.period, {}, {}};
    for (const auto& k : ks) {
        d.knots.push_back(k);
        d.values.push_back(f(k) - g(k));
    }
    return d;
}

PLCurve graph_of_differential(const PLFunction& f) {
    const std::size_t m = f.knots.size();
    if (m < 1 || f.values.size() != m) throw PreconditionError("PL function needs matching knots and values");
    for (std::size_t i = 0; i + 1 < m; ++i)
        if (!(f.knots[i] < f.knots[i + 1])) throw PreconditionError("PL function knots must increase");
    if (!(f.knots.back() < f.knots.front() + f.period))
        throw PreconditionError("PL function knots must lie in one period");
    std::vector<Point> lift;
    for (std::size_t i = 0; i < m; ++i) {
        Rational before = f.slope((i + m - 1) % m);
        Rational after = f.slope(i);
        lift.push_back({f.knots[i], before});
        if (after != before) lift.push_back({f.knots[i], after});
    }
    return PLCurve(f.period, std::move(lift), f.values[0], PLCurve::Check::local);
}

}  // namespace lagspec
