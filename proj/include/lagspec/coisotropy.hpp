#pragma once

#include "lagspec/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace lagspec {

using RVec = std::vector<Rational>;

// blocked: (q1..qn, p1..pn); interleaved: (q1, p1, q2, p2, ...)
enum class CoordinateSplit { blocked, interleaved };

struct PLSet {
    std::size_t n = 1;  // ambient dimension is 2n
    CoordinateSplit split = CoordinateSplit::blocked;
    std::vector<std::vector<RVec>> cells;  // each cell is the convex hull of its vertices

    std::size_t dimension() const { return 2 * n; }
    bool contains(const RVec& x) const;
};

Rational omega(std::size_t n, CoordinateSplit split, const RVec& u, const RVec& v);

// A finite union of polyhedral cones, each given by generators.
struct Cone {
    RVec basepoint;
    std::vector<std::vector<RVec>> pieces;
    bool symmetric = false;

    std::size_t ambient() const { return basepoint.size(); }
    bool contains(const RVec& v) const;
    std::vector<RVec> span_basis() const;
};

bool cone_subset(const Cone& a, const Cone& b);
bool cone_equal(const Cone& a, const Cone& b);

Cone contingent_cone(const PLSet& V, const RVec& x);
Cone paratingent_cone(const PLSet& V, const RVec& x);

struct CoisotropyVerdict {
    bool coisotropic = false;
    std::vector<RVec> orthogonal_of_span;  // basis of span(C+)^omega
    // on failure: a hyperplane H = {v : normal . v = 0} containing C+ whose
    // symplectic orthogonal is spanned by `direction`, which is not in C-
    std::optional<RVec> witness_normal;
    std::optional<RVec> witness_direction;
};

CoisotropyVerdict is_cone_coisotropic_at(const PLSet& V, const RVec& x);

// (W)^omega for a list of spanning vectors.
std::vector<RVec> symplectic_orthogonal(std::size_t n, CoordinateSplit split, const std::vector<RVec>& span);

std::vector<RVec> span_basis(const std::vector<RVec>& vectors, std::size_t dim);
bool in_span(const std::vector<RVec>& basis, const RVec& v);

}  // namespace lagspec
