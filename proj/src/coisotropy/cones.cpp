#include "polyhedral.hpp"

#include "lagspec/errors.hpp"

#include <algorithm>
#include <functional>

namespace lagspec::detail {

Rational dot(const RVec& a, const RVec& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

namespace {

bool is_zero(const RVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

// first nonzero entry becomes +-1, keeping the direction
RVec normalized_ray(RVec v) {
    for (const auto& x : v)
        if (x != 0) {
            Rational s = abs(x);
            for (auto& y : v) y /= s;
            break;
        }
    return v;
}

// first nonzero entry becomes 1
RVec normalized_line(RVec v) {
    for (const auto& x : v)
        if (x != 0) {
            Rational s = x;
            for (auto& y : v) y /= s;
            break;
        }
    return v;
}

void dedupe(std::vector<RVec>& vs) {
    std::vector<RVec> out;
    for (auto& v : vs)
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
    vs = std::move(out);
}

// reduced row echelon form in place; returns pivot columns
std::vector<std::size_t> rref(std::vector<RVec>& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[row], m[piv]);
        Rational inv = 1 / m[row][c];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][c] == 0) continue;
            Rational f = m[r][c];
            for (std::size_t k = 0; k < cols; ++k) m[r][k] -= f * m[row][k];
        }
        pivots.push_back(c);
        ++row;
    }
    m.resize(row);
    return pivots;
}

}  // namespace

std::size_t rank_of(std::vector<RVec> rows) {
    if (rows.empty()) return 0;
    return rref(rows, rows.front().size()).size();
}

std::vector<RVec> nullspace(const std::vector<RVec>& rows, std::size_t dim) {
    std::vector<RVec> m = rows;
    auto pivots = rref(m, dim);
    std::vector<RVec> out;
    for (std::size_t free = 0; free < dim; ++free) {
        if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
        RVec v(dim, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        out.push_back(std::move(v));
    }
    return out;
}

bool HRep::satisfied_by(const RVec& x) const {
    for (const auto& e : equalities)
        if (dot(e, x) != 0) return false;
    for (const auto& a : inequalities)
        if (dot(a, x) < 0) return false;
    return true;
}

HRep cone_hrep(const std::vector<RVec>& generators, std::size_t dim) {
    std::vector<RVec> gens;
    for (const auto& g : generators)
        if (!is_zero(g)) gens.push_back(normalized_ray(g));
    dedupe(gens);

    HRep h;
    auto span = span_basis(gens, dim);
    h.equalities = nullspace(span, dim);
    const std::size_t m = span.size();
    if (m == 0) return h;

    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> choose = [&](std::size_t from) {
        if (pick.size() + 1 == m) {
            std::vector<RVec> rows = h.equalities;
            for (auto i : pick) rows.push_back(gens[i]);
            auto ns = nullspace(rows, dim);
            if (ns.size() != 1) return;
            RVec a = ns.front();
            bool pos = false, neg = false;
            for (const auto& g : gens) {
                Rational v = dot(a, g);
                pos = pos || v > 0;
                neg = neg || v < 0;
            }
            if (pos && neg) return;
            if (neg)
                for (auto& x : a) x = -x;
            h.inequalities.push_back(normalized_ray(a));
            return;
        }
        for (std::size_t i = from; i < gens.size(); ++i) {
            pick.push_back(i);
            choose(i + 1);
            pick.pop_back();
        }
    };
    choose(0);
    dedupe(h.inequalities);
    return h;
}

std::optional<RVec> fourier_motzkin(const std::vector<std::pair<RVec, Rational>>& system, std::size_t vars) {
    using Row = std::pair<RVec, Rational>;
    auto tidy = [&](std::vector<Row> rows) -> std::optional<std::vector<Row>> {
        std::vector<Row> out;
        for (auto& [a, b] : rows) {
            if (is_zero(a)) {
                if (b > 0) return std::nullopt;
                continue;
            }
            Rational s;
            for (const auto& x : a)
                if (x != 0) {
                    s = abs(x);
                    break;
                }
            for (auto& x : a) x /= s;
            b /= s;
            bool dominated = false;
            for (auto& [a2, b2] : out)
                if (a2 == a) {
                    if (b > b2) b2 = b;
                    dominated = true;
                    break;
                }
            if (!dominated) out.emplace_back(std::move(a), std::move(b));
        }
        return out;
    };

    std::vector<std::vector<Row>> stages(vars + 1);
    auto first = tidy(system);
    if (!first) return std::nullopt;
    stages[vars] = std::move(*first);
    for (std::size_t j = vars; j-- > 0;) {
        std::vector<Row> pos, neg, next;
        for (const auto& r : stages[j + 1]) {
            if (r.first[j] > 0)
                pos.push_back(r);
            else if (r.first[j] < 0)
                neg.push_back(r);
            else
                next.push_back(r);
        }
        for (const auto& [ap, bp] : pos)
            for (const auto& [an, bn] : neg) {
                Rational cp = -an[j], cn = ap[j];
                RVec a(vars, Rational(0));
                for (std::size_t i = 0; i < vars; ++i) a[i] = cp * ap[i] + cn * an[i];
                a[j] = 0;
                next.emplace_back(std::move(a), cp * bp + cn * bn);
            }
        auto t = tidy(std::move(next));
        if (!t) return std::nullopt;
        stages[j] = std::move(*t);
    }

    RVec t(vars, Rational(0));
    for (std::size_t j = 0; j < vars; ++j) {
        std::optional<Rational> lo, hi;
        for (const auto& [a, b] : stages[j + 1]) {
            if (a[j] == 0) continue;
            Rational rest = b;
            for (std::size_t i = 0; i < j; ++i) rest -= a[i] * t[i];
            Rational bound = rest / a[j];
            if (a[j] > 0) {
                if (!lo || bound > *lo) lo = bound;
            } else if (!hi || bound < *hi) {
                hi = bound;
            }
        }
        if (lo && hi)
            t[j] = (*lo + *hi) / 2;
        else if (lo)
            t[j] = *lo + 1;
        else if (hi)
            t[j] = *hi - 1;
    }
    return t;
}

std::vector<RVec> chamber_points(const std::vector<RVec>& normals, std::size_t k) {
    if (k == 0) return {RVec{}};
    std::vector<RVec> hs;
    for (const auto& h : normals)
        if (!is_zero(h)) hs.push_back(normalized_line(h));
    dedupe(hs);
    if (hs.empty()) {
        RVec e(k, Rational(0));
        e[0] = 1;
        return {e};
    }

    std::vector<RVec> out;
    std::vector<std::pair<RVec, Rational>> system;
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        auto pt = fourier_motzkin(system, k);
        if (!pt) return;
        if (i == hs.size()) {
            out.push_back(*pt);
            return;
        }
        for (int sg : {1, -1}) {
            RVec a = hs[i];
            for (auto& x : a) x *= sg;
            system.emplace_back(std::move(a), Rational(1));
            walk(i + 1);
            system.pop_back();
        }
    };
    walk(0);
    return out;
}

std::optional<RVec> uncovered_direction(const std::vector<RVec>& basis, const std::vector<RVec>& domain,
                                        const std::vector<HRep>& pieces, std::size_t dim) {
    const std::size_t k = basis.size();
    if (k == 0) return std::nullopt;
    auto pull = [&](const RVec& a) {
        RVec r(k, Rational(0));
        for (std::size_t i = 0; i < k; ++i) r[i] = dot(a, basis[i]);
        return r;
    };
    std::vector<RVec> normals = domain;
    std::vector<const HRep*> live;
    for (const auto& p : pieces) {
        bool thin = false;
        for (const auto& e : p.equalities) thin = thin || !is_zero(pull(e));
        if (thin) continue;
        live.push_back(&p);
        for (const auto& a : p.inequalities) normals.push_back(pull(a));
    }
    for (const auto& t : chamber_points(normals, k)) {
        bool in_domain = true;
        for (const auto& d : domain) in_domain = in_domain && dot(d, t) >= 0;
        if (!in_domain) continue;
        RVec y(dim, Rational(0));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t c = 0; c < dim; ++c) y[c] += t[i] * basis[i][c];
        bool covered = false;
        for (const auto* p : live) covered = covered || p->satisfied_by(y);
        if (!covered) return normalized_ray(y);
    }
    return std::nullopt;
}

}  // namespace lagspec::detail

namespace lagspec {

std::vector<RVec> span_basis(const std::vector<RVec>& vectors, std::size_t dim) {
    std::vector<RVec> m;
    for (const auto& v : vectors) {
        if (v.size() != dim) throw PreconditionError("vector has the wrong dimension");
        m.push_back(v);
    }
    detail::rref(m, dim);
    return m;
}

bool in_span(const std::vector<RVec>& basis, const RVec& v) {
    std::vector<RVec> m = basis;
    const std::size_t r = detail::rank_of(m);
    m.push_back(v);
    return detail::rank_of(m) == r;
}

bool Cone::contains(const RVec& v) const {
    if (v.size() != ambient()) throw PreconditionError("direction has the wrong dimension");
    for (const auto& piece : pieces)
        if (detail::cone_hrep(piece, ambient()).satisfied_by(v)) return true;
    return false;
}

std::vector<RVec> Cone::span_basis() const {
    std::vector<RVec> all;
    for (const auto& piece : pieces) all.insert(all.end(), piece.begin(), piece.end());
    return lagspec::span_basis(all, ambient());
}

bool cone_subset(const Cone& a, const Cone& b) {
    if (a.ambient() != b.ambient()) throw PreconditionError("cones live in different spaces");
    const std::size_t d = a.ambient();
    std::vector<detail::HRep> target;
    for (const auto& p : b.pieces) target.push_back(detail::cone_hrep(p, d));
    for (const auto& p : a.pieces) {
        auto basis = lagspec::span_basis(p, d);
        if (basis.empty()) {
            bool has_zero = !target.empty();
            if (!has_zero) return false;
            continue;
        }
        auto h = detail::cone_hrep(p, d);
        std::vector<RVec> domain;
        for (const auto& ineq : h.inequalities) {
            RVec r(basis.size(), Rational(0));
            for (std::size_t i = 0; i < basis.size(); ++i) r[i] = detail::dot(ineq, basis[i]);
            domain.push_back(std::move(r));
        }
        if (detail::uncovered_direction(basis, domain, target, d)) return false;
    }
    return true;
}

bool cone_equal(const Cone& a, const Cone& b) { return cone_subset(a, b) && cone_subset(b, a); }

}  // namespace lagspec
