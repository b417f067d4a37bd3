#include "lagspec/coisotropy.hpp"

#include "lagspec/errors.hpp"
#include "polyhedral.hpp"

namespace lagspec {

namespace {

std::size_t q_index(std::size_t i, std::size_t, CoordinateSplit split) {
    return split == CoordinateSplit::blocked ? i : 2 * i;
}

std::size_t p_index(std::size_t i, std::size_t n, CoordinateSplit split) {
    return split == CoordinateSplit::blocked ? n + i : 2 * i + 1;
}

void check_set(const PLSet& V) {
    if (V.n == 0) throw PreconditionError("ambient dimension must be positive");
    for (const auto& cell : V.cells) {
        if (cell.empty()) throw PreconditionError("cell without vertices");
        for (const auto& v : cell)
            if (v.size() != V.dimension()) throw PreconditionError("cell vertex has the wrong dimension");
    }
}

bool cell_contains(const std::vector<RVec>& cell, const RVec& x) {
    // x in conv(cell) iff (x, 1) lies in the cone over the homogenized vertices
    std::vector<RVec> lifted;
    for (const auto& v : cell) {
        RVec w = v;
        w.push_back(1);
        lifted.push_back(std::move(w));
    }
    RVec y = x;
    y.push_back(1);
    return detail::cone_hrep(lifted, y.size()).satisfied_by(y);
}

std::vector<std::vector<RVec>> cell_cones(const PLSet& V, const RVec& x) {
    check_set(V);
    if (x.size() != V.dimension()) throw PreconditionError("point has the wrong dimension");
    std::vector<std::vector<RVec>> out;
    for (const auto& cell : V.cells) {
        if (!cell_contains(cell, x)) continue;
        std::vector<RVec> gens;
        for (const auto& v : cell) {
            RVec d(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) d[i] = v[i] - x[i];
            gens.push_back(std::move(d));
        }
        out.push_back(std::move(gens));
    }
    if (out.empty()) throw PreconditionError("point is not in the set");
    return out;
}

}  // namespace

bool PLSet::contains(const RVec& x) const {
    check_set(*this);
    if (x.size() != dimension()) throw PreconditionError("point has the wrong dimension");
    for (const auto& cell : cells)
        if (cell_contains(cell, x)) return true;
    return false;
}

Rational omega(std::size_t n, CoordinateSplit split, const RVec& u, const RVec& v) {
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t q = q_index(i, n, split), p = p_index(i, n, split);
        s += u[q] * v[p] - u[p] * v[q];
    }
    return s;
}

std::vector<RVec> symplectic_orthogonal(std::size_t n, CoordinateSplit split, const std::vector<RVec>& span) {
    // omega(y, s) = y . (J s) with (J s)_q = s_p, (J s)_p = -s_q
    std::vector<RVec> rows;
    for (const auto& s : span) {
        RVec r(2 * n, Rational(0));
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t q = q_index(i, n, split), p = p_index(i, n, split);
            r[q] = s[p];
            r[p] = -s[q];
        }
        rows.push_back(std::move(r));
    }
    return detail::nullspace(rows, 2 * n);
}

Cone contingent_cone(const PLSet& V, const RVec& x) {
    Cone c;
    c.basepoint = x;
    c.pieces = cell_cones(V, x);
    return c;
}

Cone paratingent_cone(const PLSet& V, const RVec& x) {
    auto stars = cell_cones(V, x);
    Cone c;
    c.basepoint = x;
    c.symmetric = true;
    for (const auto& a : stars)
        for (const auto& b : stars) {
            std::vector<RVec> gens = a;
            for (auto v : b) {
                for (auto& e : v) e = -e;
                gens.push_back(std::move(v));
            }
            c.pieces.push_back(std::move(gens));
        }
    return c;
}

CoisotropyVerdict is_cone_coisotropic_at(const PLSet& V, const RVec& x) {
    Cone minus = contingent_cone(V, x);
    Cone plus = paratingent_cone(V, x);
    CoisotropyVerdict out;
    out.orthogonal_of_span = symplectic_orthogonal(V.n, V.split, plus.span_basis());
    std::vector<detail::HRep> pieces;
    for (const auto& p : minus.pieces) pieces.push_back(detail::cone_hrep(p, V.dimension()));
    auto y = detail::uncovered_direction(out.orthogonal_of_span, {}, pieces, V.dimension());
    out.coisotropic = !y.has_value();
    if (y) {
        RVec normal(V.dimension(), Rational(0));
        for (std::size_t i = 0; i < V.n; ++i) {
            std::size_t q = q_index(i, V.n, V.split), p = p_index(i, V.n, V.split);
            normal[p] = (*y)[q];
            normal[q] = -(*y)[p];
        }
        out.witness_normal = normal;
        out.witness_direction = *y;
    }
    return out;
}

}  // namespace lagspec
