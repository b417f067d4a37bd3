#include "lagspec/peano.hpp"

#include "lagspec/errors.hpp"
#include "routing.hpp"

#include <algorithm>

namespace lagspec {

bool SupBox::contains_open(const Point& x) const {
    return abs(x.q - center.q) < half && abs(x.p - center.p) < half;
}

bool SupBox::contains_closed(const Point& x) const {
    return abs(x.q - center.q) <= half && abs(x.p - center.p) <= half;
}

PLCurve peano_base_curve() {
    return PLCurve(Rational(4), {{0, 0}, {1, 1}, {2, Rational(-1, 2)}, {3, Rational(-1, 2)}}, Rational(0));
}

namespace {

Rational radical_inverse(std::size_t i, unsigned base) {
    Rational out = 0;
    Rational f(1, base);
    while (i > 0) {
        out += f * static_cast<unsigned long>(i % base);
        i /= base;
        f /= base;
    }
    return out;
}

Rational polygon_area(const std::vector<Point>& pts) {
    Rational twice = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& a = pts[i];
        const auto& b = pts[(i + 1) % pts.size()];
        twice += a.q * b.p - b.q * a.p;
    }
    return abs(twice) / 2;
}

Rational clearance_of(const PLCurve& l, const Point& z, const std::vector<Point>& avoid, const Square& K) {
    Rational d = min_of(min_of(z.q - K.q0, K.q0 + K.side - z.q), min_of(z.p - K.p0, K.p0 + K.side - z.p));
    const long n = static_cast<long>(l.size());
    for (long i = 0; i < n; ++i) d = min_of(d, detail::sup_distance(z, l.vertex(i), l.vertex(i + 1)));
    for (const auto& a : avoid) d = min_of(d, max_of(abs(a.q - z.q), abs(a.p - z.p)));
    return d;
}

}  // namespace

std::vector<Point> halton_points(const Square& K, std::size_t count, std::size_t skip) {
    std::vector<Point> out;
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t k = i + skip;
        out.push_back({K.q0 + K.side * radical_inverse(k, 2), K.p0 + K.side * radical_inverse(k, 3)});
    }
    return out;
}

std::vector<Rational> geometric_epsilons(const Rational& epsilon0, const Rational& ratio, std::size_t count) {
    std::vector<Rational> out;
    Rational e = epsilon0;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(e);
        e *= ratio;
    }
    return out;
}

PLCurve apply_probe(const TongueStep& step, const PLCurve& l) {
    const auto& v = l.vertices();
    const long n = static_cast<long>(v.size());
    for (long i = 0; i < n; ++i) {
        if (l.vertex(i) != step.cap_from || l.vertex(i + 1) != step.cap_to) continue;
        const Rational& zq = step.z.q;
        const Rational& zp = step.z.p;
        const Rational& r = step.r;
        const Rational& s = step.s;
        std::vector<Point> inner{{zq - r, zp}, {zq - r, zp + s}, {zq, zp + s},
                                 {zq, zp - s}, {zq + r, zp - s}, {zq + r, zp}};
        return PLCurve(l.period(), detail::splice(v, static_cast<std::size_t>(i), inner), l.brane_constant());
    }
    throw PreconditionError("probe cap of the step is not present in the curve");
}

TongueStep make_tongue(const PLCurve& l, const Point& z, const std::vector<Point>& avoid, const Rational& epsilon,
                       const Square& K, const std::vector<SupBox>& keep_out) {
    if (epsilon <= 0) throw PreconditionError("epsilon must be positive");
    if (!K.contains_open(z)) throw PreconditionError("target is not inside the square");
    if (l.locate(z)) throw PreconditionError("target lies on the curve");
    for (const auto& a : avoid)
        if (a == z) throw PreconditionError("target is in the avoid set");
    if (z.p == z.q) throw NoRoom("target lies on the base diagonal");

    TongueStep st{z,       avoid,   epsilon, z.p > z.q, 0, 0, {}, {}, {}, 0, 0, 0, 0, 0,
                  l,       l,       0,       0};
    st.r = detail::sqrt_upper(epsilon * Rational(21, 100));
    st.s = st.r;
    const Rational R = st.r * Rational(65, 64);
    const Rational g = R / 64;
    st.probe_ball = {z, R};
    st.cap_from = {z.q - R, z.p};
    st.cap_to = {z.q + R, z.p};
    st.clearance = [&]() -> Rational {
        Rational d = clearance_of(l, z, avoid, K);
        return d * d / 4;
    }();

    SupBox room{z, R + g};
    if (!(K.contains_open({z.q - R - g, z.p - R - g}) && K.contains_open({z.q + R + g, z.p + R + g})))
        throw NoRoom("probe ball leaves the square");
    for (long i = 0; i < static_cast<long>(l.size()); ++i)
        if (detail::segment_meets_closed_box(l.vertex(i), l.vertex(i + 1), room))
            throw NoRoom("curve passes too close to the target");
    for (const auto& b : keep_out)
        if (abs(b.center.q - z.q) <= b.half + R + g && abs(b.center.p - z.p) <= b.half + R + g)
            throw NoRoom("target is too close to an earlier probe ball");

    auto detour = detail::route_corridor(l, z, st.upward, epsilon, R, g, K, keep_out);
    if (!detour) throw NoRoom("no corridor reaches the target");
    st.corridor_width = detour->width;
    st.corridor_length = detour->length;

    std::vector<Point> region = detour->points;
    st.tongue_area = polygon_area(region);
    if (!(st.tongue_area < epsilon * Rational(9, 10))) throw NoRoom("tongue exceeds its area budget");

    std::vector<Point> lift = detail::splice(l.vertices(), detour->host, detour->points);
    const Rational centre = (detour->points.front().q + detour->points.back().q) / 2;
    auto notch = detail::place_notch(l.period(), lift, centre, st.upward, st.tongue_area,
                                     detour->width + g, K, keep_out);
    if (!notch) throw NoRoom("no free stretch of diagonal for the compensating notch");
    st.notch_depth = notch->depth;
    lift = detail::splice(lift, notch->host, {notch->a, notch->apex, notch->b});

    st.curve_after = PLCurve(l.period(), lift, l.brane_constant());
    st.probe_curve = apply_probe(st, st.curve_after);

    st.gamma_step = gamma_pair(st.curve_after, l, Genericity::limit);
    st.gamma_probe = gamma_pair(st.probe_curve, st.curve_after, Genericity::limit);
    if (!(st.gamma_step < epsilon))
        throw BoundViolation("step moved the curve by " + to_string(st.gamma_step) + " >= " + to_string(epsilon));
    if (!(st.gamma_probe > epsilon / 5))
        throw BoundViolation("probe separation " + to_string(st.gamma_probe) + " <= " + to_string(epsilon / 5));
    return st;
}

TongueSchedule run_schedule(const std::vector<Point>& dense_points, const std::vector<Rational>& epsilons,
                            const Square& K, std::size_t steps) {
    if (epsilons.size() < steps + 1)
        throw PreconditionError("schedule needs " + std::to_string(steps + 1) + " epsilons");
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (epsilons[i] <= 0) throw PreconditionError("epsilons must be positive");
        if (i + 1 < epsilons.size() && !(epsilons[i + 1] * 20 < epsilons[i]))
            throw PreconditionError("epsilon ratio condition fails at index " + std::to_string(i + 1));
    }
    TongueSchedule s;
    s.K = K;
    s.dense_points = dense_points;
    s.epsilons = epsilons;
    s.stages.push_back(peano_base_curve());
    std::vector<Point> avoid;
    std::vector<SupBox> keep;
    std::size_t next = 0;
    while (s.steps.size() < steps) {
        if (next >= dense_points.size())
            throw NoRoom("dense point list exhausted after " + std::to_string(s.steps.size()) + " steps");
        const Point z = dense_points[next++];
        const Rational eps = epsilons[s.steps.size()];
        bool inside_earlier = false;
        for (const auto& b : keep)
            if (b.contains_closed(z)) inside_earlier = true;
        if (inside_earlier) {
            s.skipped.push_back({z, "inside an earlier probe ball"});
            continue;
        }
        try {
            TongueStep st = make_tongue(s.stages.back(), z, avoid, eps, K, keep);
            avoid.push_back(z);
            keep.push_back(st.probe_ball);
            s.stages.push_back(st.curve_after);
            s.steps.push_back(std::move(st));
        } catch (const NoRoom& e) {
            s.skipped.push_back({z, e.what()});
        } catch (const PreconditionError& e) {
            s.skipped.push_back({z, e.what()});
        }
    }
    return s;
}

Certificate verify_cauchy_tail(const TongueSchedule& s, std::size_t k, std::size_t m) {
    if (!(k < m && m < s.stages.size())) throw PreconditionError("tail certificate needs k < m <= steps");
    Certificate c;
    c.name = "cauchy_tail k=" + std::to_string(k) + " m=" + std::to_string(m);
    c.claim = "gamma(L_{k+1}, L_m) < 20/19 eps_{k+1}";
    c.value = gamma_pair(s.stages[k + 1], s.stages[m], Genericity::limit);
    c.bound = Rational(20, 19) * s.epsilons[k + 1];
    c.pass = c.value < c.bound;
    return c;
}

Certificate verify_separation(const TongueSchedule& s, std::size_t k, std::size_t m) {
    if (!(k < m && m < s.stages.size())) throw PreconditionError("separation certificate needs k < m <= steps");
    const auto& step = s.steps[k];
    Certificate c;
    c.name = "separation k=" + std::to_string(k) + " m=" + std::to_string(m);
    c.claim = "gamma(phi_k(L_m), L_m) > eps_k/11";
    const PLCurve& Lm = s.stages[m];
    c.value = gamma_pair(apply_probe(step, Lm), Lm, Genericity::limit);
    c.bound = s.epsilons[k] / 11;
    Rational drift = m == k + 1 ? Rational(0) : gamma_pair(Lm, s.stages[k + 1], Genericity::limit);
    c.chain_bound = step.gamma_probe - 2 * drift;
    c.pass = c.value > c.bound;
    return c;
}

}  // namespace lagspec
