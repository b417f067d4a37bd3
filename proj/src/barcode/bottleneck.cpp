#include "lagspec/barcode.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace lagspec {

namespace {

enum class BarType { finite, up, down, full };

BarType type_of(const Bar& b) {
    bool lo = b.birth.is_finite();
    bool hi = b.death.is_finite();
    if (lo && hi) return BarType::finite;
    if (lo) return BarType::up;
    if (hi) return BarType::down;
    return BarType::full;
}

// Cost of matching two bars of the same degree and type.
Rational match_cost(const Bar& a, const Bar& b) {
    Rational c = 0;
    if (a.birth.is_finite()) c = max_of(c, abs(a.birth.value() - b.birth.value()));
    if (a.death.is_finite()) c = max_of(c, abs(a.death.value() - b.death.value()));
    return c;
}

Rational half_length(const Bar& a) { return (a.death.value() - a.birth.value()) / 2; }

// Kuhn's augmenting paths on a dense adjacency matrix.
bool has_perfect_matching(const std::vector<std::vector<bool>>& adj) {
    const std::size_t n = adj.size();
    std::vector<long> match_right(n, -1);
    std::vector<bool> seen;
    std::function<bool(std::size_t)> augment = [&](std::size_t u) -> bool {
        for (std::size_t v = 0; v < n; ++v) {
            if (!adj[u][v] || seen[v]) continue;
            seen[v] = true;
            if (match_right[v] < 0 || augment(static_cast<std::size_t>(match_right[v]))) {
                match_right[v] = static_cast<long>(u);
                return true;
            }
        }
        return false;
    };
    for (std::size_t u = 0; u < n; ++u) {
        seen.assign(n, false);
        if (!augment(u)) return false;
    }
    return true;
}

}  // namespace

ExtRational bottleneck(const Barcode& a, const Barcode& b) {
    const auto& A = a.bars;
    const auto& B = b.bars;

    // Essential bars must pair up by degree and type.
    {
        std::vector<std::tuple<int, int>> ka, kb;
        for (const auto& x : A)
            if (type_of(x) != BarType::finite) ka.emplace_back(x.degree, static_cast<int>(type_of(x)));
        for (const auto& x : B)
            if (type_of(x) != BarType::finite) kb.emplace_back(x.degree, static_cast<int>(type_of(x)));
        std::sort(ka.begin(), ka.end());
        std::sort(kb.begin(), kb.end());
        if (ka != kb) return ExtRational::pos_infinity();
    }

    std::vector<Rational> candidates{Rational(0)};
    for (const auto& x : A)
        if (type_of(x) == BarType::finite) candidates.push_back(half_length(x));
    for (const auto& y : B)
        if (type_of(y) == BarType::finite) candidates.push_back(half_length(y));
    for (const auto& x : A)
        for (const auto& y : B)
            if (x.degree == y.degree && type_of(x) == type_of(y)) candidates.push_back(match_cost(x, y));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    const std::size_t na = A.size(), nb = B.size();
    const std::size_t n = na + nb;
    auto feasible = [&](const Rational& delta) {
        // left: A bars then diagonal slots for B; right: B bars then diagonal slots for A
        std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < na; ++i) {
            for (std::size_t j = 0; j < nb; ++j)
                if (A[i].degree == B[j].degree && type_of(A[i]) == type_of(B[j]) &&
                    match_cost(A[i], B[j]) <= delta)
                    adj[i][j] = true;
            if (type_of(A[i]) == BarType::finite && half_length(A[i]) <= delta) adj[i][nb + i] = true;
        }
        for (std::size_t j = 0; j < nb; ++j) {
            if (type_of(B[j]) == BarType::finite && half_length(B[j]) <= delta) adj[na + j][j] = true;
            for (std::size_t i = 0; i < na; ++i) adj[na + j][nb + i] = true;
        }
        return has_perfect_matching(adj);
    };

    std::size_t lo = 0, hi = candidates.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (feasible(candidates[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    return ExtRational(candidates[lo]);
}

}  // namespace lagspec
