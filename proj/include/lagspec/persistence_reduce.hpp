#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <vector>

namespace lagspec {

struct PersistencePairing {
    std::size_t birth;                  // generator index
    std::optional<std::size_t> death;   // generator index, empty for essential classes
};

// Column reduction over the two-element field.  Filtration values come from
// any ordered scalar; the differential must strictly lower them.
template <class Scalar>
std::vector<PersistencePairing> reduce_filtration(const std::vector<Scalar>& action,
                                                  const std::vector<std::vector<std::size_t>>& boundary) {
    const std::size_t n = action.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return action[a] < action[b]; });
    std::vector<std::size_t> position(n);
    for (std::size_t i = 0; i < n; ++i) position[order[i]] = i;

    std::vector<std::vector<std::size_t>> column(n);
    std::unordered_map<std::size_t, std::size_t> pivot_owner;
    std::vector<bool> is_death_row(n, false);
    std::vector<std::optional<std::size_t>> killer(n);

    for (std::size_t j = 0; j < n; ++j) {
        auto& col = column[j];
        for (std::size_t y : boundary[order[j]]) col.push_back(position[y]);
        std::sort(col.begin(), col.end());
        // mod-2 reduction of duplicate entries
        std::vector<std::size_t> dedup;
        for (std::size_t k = 0; k < col.size();) {
            std::size_t m = k;
            while (m < col.size() && col[m] == col[k]) ++m;
            if ((m - k) % 2 == 1) dedup.push_back(col[k]);
            k = m;
        }
        col.swap(dedup);

        while (!col.empty()) {
            auto it = pivot_owner.find(col.back());
            if (it == pivot_owner.end()) break;
            const auto& other = column[it->second];
            std::vector<std::size_t> sum;
            sum.reserve(col.size() + other.size());
            std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                          std::back_inserter(sum));
            col.swap(sum);
        }
        if (!col.empty()) {
            pivot_owner.emplace(col.back(), j);
            killer[col.back()] = j;
            is_death_row[j] = true;
        }
    }

    std::vector<PersistencePairing> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (is_death_row[i]) continue;  // this generator kills a class
        PersistencePairing p{order[i], std::nullopt};
        if (killer[i]) p.death = order[*killer[i]];
        out.push_back(p);
    }
    return out;
}

}  // namespace lagspec
