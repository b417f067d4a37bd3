#include "lagspec/floer.hpp"

#include "engine.hpp"

#include <algorithm>
#include <set>

namespace lagspec {

namespace {

constexpr unsigned kAttempts = 12;

void require_same_period(const PLCurve& a, const PLCurve& b) {
    if (a.period() != b.period()) throw PreconditionError("curves live on annuli of different period");
}

Point to_point(const Vec2<Rational>& v) { return {v.q, v.p}; }

detail::PairData<Rational> strict_data(const PLCurve& l1, const PLCurve& l2, bool polygons) {
    require_same_period(l1, l2);
    auto c1 = detail::chain_of_curve<Rational>(l1);
    auto c2 = detail::chain_of_curve<Rational>(l2);
    return detail::analyze(c1, c2, l1.period(), false, polygons);
}

template <class S>
Barcode bars_from(const detail::PairData<S>& data, bool normalize_single) {
    Barcode out;
    int flip = 0;
    if (normalize_single) {
        for (const auto& p : data.pairing)
            if (!p.death) flip = data.crossings[p.birth].degree & 1;
    }
    for (const auto& p : data.pairing) {
        Rational b = standard_part(data.crossings[p.birth].action);
        Bar bar;
        bar.birth = ExtRational(b);
        bar.degree = (data.crossings[p.birth].degree ^ flip) & 1;
        if (p.death) {
            Rational d = standard_part(data.crossings[*p.death].action);
            if (d == b) continue;
            bar.death = ExtRational(d);
        } else {
            bar.death = ExtRational::pos_infinity();
        }
        out.bars.push_back(bar);
    }
    return out.canonical();
}

Barcode limit_barcode(const PLCurve& l1, const PLCurve& l2) {
    // transverse pairs keep their barcode under a small enough displacement
    try {
        return bars_from(strict_data(l1, l2, false), false);
    } catch (const NonTransverse&) {
    } catch (const UnsupportedPair&) {
    }
    auto c1 = detail::chain_of_curve<Infinitesimal>(l1);
    std::string last;
    for (unsigned attempt = 0; attempt < kAttempts; ++attempt) {
        try {
            auto c2 = detail::displaced_chain(l2, attempt);
            auto data = detail::analyze(c1, c2, l1.period(), true, false);
            return bars_from(data, false);
        } catch (const detail::Degenerate& d) {
            last = d.what;
        }
    }
    throw UnsupportedPair("no generic displacement found (" + last + ")");
}

}  // namespace

std::vector<IntersectionPoint> intersect(const PLCurve& l1, const PLCurve& l2) {
    require_same_period(l1, l2);
    auto c1 = detail::chain_of_curve<Rational>(l1);
    auto c2 = detail::chain_of_curve<Rational>(l2);
    auto xs = detail::find_crossings(c1, c2, l1.period(), false);
    std::sort(xs.begin(), xs.end(), [](const auto& a, const auto& b) {
        if (a.seg1 != b.seg1) return a.seg1 < b.seg1;
        return a.t1 < b.t1;
    });
    std::vector<IntersectionPoint> out;
    for (const auto& x : xs) out.push_back({to_point(x.point), x.action, x.degree, x.seg1, x.seg2});
    return out;
}

FilteredComplex complex_of_pair(const PLCurve& l1, const PLCurve& l2) {
    auto data = strict_data(l1, l2, false);
    FilteredComplex c;
    c.grading = Grading::parity;
    for (std::size_t i = 0; i < data.crossings.size(); ++i)
        c.generators.push_back({"x" + std::to_string(i), data.crossings[i].action, data.crossings[i].degree});
    c.boundary = data.boundary;
    return c;
}

std::vector<Lune> lunes_of_pair(const PLCurve& l1, const PLCurve& l2) {
    auto data = strict_data(l1, l2, true);
    std::vector<Lune> out;
    for (const auto& l : data.lunes) {
        Lune lu{l.upper, l.lower, l.area, {}};
        for (const auto& v : l.polygon) lu.boundary.push_back(to_point(v));
        out.push_back(std::move(lu));
    }
    return out;
}

Barcode barcode_of_pair(const PLCurve& l1, const PLCurve& l2, Genericity g) {
    if (g == Genericity::limit) return limit_barcode(l1, l2);
    return bars_from(strict_data(l1, l2, false), false);
}

std::pair<Rational, Rational> c_pm_pair(const PLCurve& l1, const PLCurve& l2, Genericity g) {
    Barcode b = barcode_of_pair(l1, l2, g);
    return {c_minus(b), c_plus(b)};
}

Rational gamma_pair(const PLCurve& l1, const PLCurve& l2, Genericity g) {
    auto [lo, hi] = c_pm_pair(l1, l2, g);
    return hi - lo;
}

Rational c_metric_pair(const PLCurve& l1, const PLCurve& l2, Genericity g) {
    auto [lo, hi] = c_pm_pair(l1, l2, g);
    return max_of(hi, Rational(0)) - min_of(lo, Rational(0));
}

Barcode barcode_vs_fiber(const PLCurve& l, const Rational& x) {
    auto c1 = detail::chain_of_curve<Rational>(l);
    auto c2 = detail::fiber_chain(l, x);
    auto data = detail::analyze(c1, c2, l.period(), false, false);
    return bars_from(data, true);
}

bool is_pseudograph(const PLCurve& l, const std::vector<Rational>& xs) {
    for (const auto& x : xs)
        if (barcode_vs_fiber(l, x).size() != 1) return false;
    return true;
}

std::vector<Rational> fiber_samples(const PLCurve& l, std::size_t count) {
    const Rational& Q = l.period();
    std::set<Rational> bad;
    for (const auto& v : l.vertices()) bad.insert(v.q - Q * floor_of(v.q / Q));
    std::vector<Rational> out;
    for (std::size_t i = 0; i < count; ++i) {
        Rational x = Q * ratio(2 * static_cast<long>(i) + 1, 2 * static_cast<long>(count));
        Rational step = Q / Rational(7 * static_cast<long>(count));
        while (bad.count(x)) {
            step /= 2;
            x += step;
        }
        out.push_back(x);
    }
    return out;
}

std::vector<Rational> gap_fibers(const PLCurve& l) {
    const Rational& Q = l.period();
    std::set<Rational> xs;
    for (const auto& v : l.vertices()) xs.insert(v.q - Q * floor_of(v.q / Q));
    std::vector<Rational> out;
    for (auto it = xs.begin(); it != xs.end(); ++it) {
        auto next = std::next(it);
        Rational b = next == xs.end() ? *xs.begin() + Q : *next;
        Rational m = (*it + b) / 2;
        out.push_back(m - Q * floor_of(m / Q));
    }
    return out;
}

}  // namespace lagspec
