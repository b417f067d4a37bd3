#pragma once

#include "lagspec/rational.hpp"

#include <type_traits>
#include <utility>

namespace lagspec {

template <class S>
struct Vec2 {
    S q;
    S p;
    Vec2 operator+(const Vec2& o) const { return {q + o.q, p + o.p}; }
    Vec2 operator-(const Vec2& o) const { return {q - o.q, p - o.p}; }
    Vec2 operator*(const S& s) const { return {q * s, p * s}; }
};

template <class V>
auto cross2(const V& a, const V& b) -> std::decay_t<decltype(a.q)> {
    return a.q * b.p - a.p * b.q;
}

enum class SegmentHit { none, proper, degenerate };

template <class S>
struct SegmentIntersection {
    SegmentHit kind = SegmentHit::none;
    S t{};  // parameter on the first segment
    S s{};  // parameter on the second segment
};

// Classifies the closed segments [a0,a1] and [b0,b1]: a proper crossing has
// both parameters strictly inside (0,1); any contact at an endpoint or
// collinear overlap is degenerate.
template <class S, class V>
SegmentIntersection<S> intersect_segments(const V& a0, const V& a1, const V& b0, const V& b1) {
    SegmentIntersection<S> out;
    const S d1q = a1.q - a0.q, d1p = a1.p - a0.p;
    const S d2q = b1.q - b0.q, d2p = b1.p - b0.p;
    const S wq = b0.q - a0.q, wp = b0.p - a0.p;
    const S den = d1q * d2p - d1p * d2q;
    if (sign_of(den) == 0) {
        if (sign_of(S(wq * d1p - wp * d1q)) != 0) return out;  // parallel, distinct lines
        // collinear: project on the dominant axis of the first segment
        const bool use_q = sign_of(d1q) != 0;
        S a_lo = use_q ? a0.q : a0.p, a_hi = use_q ? a1.q : a1.p;
        S b_lo = use_q ? b0.q : b0.p, b_hi = use_q ? b1.q : b1.p;
        if (a_hi < a_lo) std::swap(a_lo, a_hi);
        if (b_hi < b_lo) std::swap(b_lo, b_hi);
        if (b_hi < a_lo || a_hi < b_lo) return out;
        out.kind = SegmentHit::degenerate;
        return out;
    }
    S tn = wq * d2p - wp * d2q;
    S sn = wq * d1p - wp * d1q;
    // normalize so the denominator is positive
    S dd = den;
    if (sign_of(dd) < 0) {
        tn = -tn;
        sn = -sn;
        dd = -dd;
    }
    const int t0 = sign_of(tn), t1 = sign_of(S(tn - dd));
    const int s0 = sign_of(sn), s1 = sign_of(S(sn - dd));
    if (t0 < 0 || t1 > 0 || s0 < 0 || s1 > 0) return out;
    if (t0 == 0 || t1 == 0 || s0 == 0 || s1 == 0) {
        out.kind = SegmentHit::degenerate;
        return out;
    }
    out.kind = SegmentHit::proper;
    out.t = tn / dd;
    out.s = sn / dd;
    return out;
}

}  // namespace lagspec
