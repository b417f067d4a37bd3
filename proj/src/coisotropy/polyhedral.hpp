#pragma once

#include "lagspec/coisotropy.hpp"

#include <optional>
#include <vector>

namespace lagspec::detail {

Rational dot(const RVec& a, const RVec& b);
std::size_t rank_of(std::vector<RVec> rows);
// Basis of {x : rows . x = 0} in R^dim.
std::vector<RVec> nullspace(const std::vector<RVec>& rows, std::size_t dim);

// {x : eq . x = 0 for all eq, ineq . x >= 0 for all ineq}
struct HRep {
    std::vector<RVec> equalities;
    std::vector<RVec> inequalities;

    bool satisfied_by(const RVec& x) const;
};

HRep cone_hrep(const std::vector<RVec>& generators, std::size_t dim);

// Some t with a . t >= b for every (a, b); nullopt if infeasible.
std::optional<RVec> fourier_motzkin(const std::vector<std::pair<RVec, Rational>>& system, std::size_t vars);

// One interior point per full-dimensional chamber of the central arrangement
// of the given normals in R^k.
std::vector<RVec> chamber_points(const std::vector<RVec>& normals, std::size_t k);

// Is {B t : domain rows . t >= 0} covered by the union of the pieces (given
// in ambient coordinates)?  Returns an uncovered ambient vector otherwise.
std::optional<RVec> uncovered_direction(const std::vector<RVec>& basis, const std::vector<RVec>& domain,
                                        const std::vector<HRep>& pieces, std::size_t dim);

}  // namespace lagspec::detail
