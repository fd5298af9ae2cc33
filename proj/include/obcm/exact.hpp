#ifndef OBCM_EXACT_HPP
#define OBCM_EXACT_HPP

// Desk-scale exact optimum: dynamic programming over vertex subsets, plus
// plain permutation enumeration to cross-check the DP on tiny inputs.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "obcm/cross_table.hpp"

namespace obcm {

struct exact_result {
    crossing_t optimum{0};
    ordering best;
};

inline constexpr vertex_t exact_dp_max_n2 = 24;
inline constexpr vertex_t brute_force_max_n2 = 9;

/// Optimal crossing number and one optimal ordering by Held-Karp recurrence
/// over subsets: f(S) = min over v in S of f(S \ {v}) + sum of c[u][v] for
/// u in S \ {v}, placing v last among S. Ties prefer the lowest vertex id.
/// Refuses n2 > 24 (the 2^n2 cost array is the binding limit).
inline exact_result exact_dp(const cross_table& table) {
    const vertex_t n2 = table.n2();
    if (n2 > exact_dp_max_n2)
        throw std::invalid_argument("exact_dp supports n2 <= " +
                                    std::to_string(exact_dp_max_n2) + ", got " +
                                    std::to_string(n2));
    if (n2 <= 1) return {0, ordering::identity(n2)};

    const std::uint32_t full = (1u << n2) - 1;
    std::vector<crossing_t> f(static_cast<std::size_t>(full) + 1,
                              std::numeric_limits<crossing_t>::max());
    f[0] = 0;
    for (std::uint32_t set = 1; set <= full; ++set) {
        crossing_t best = std::numeric_limits<crossing_t>::max();
        for (std::uint32_t bits = set; bits != 0; bits &= bits - 1) {
            const vertex_t v = static_cast<vertex_t>(std::countr_zero(bits));
            const std::uint32_t rest = set & ~(1u << v);
            crossing_t cost = f[rest];
            for (std::uint32_t rb = rest; rb != 0; rb &= rb - 1)
                cost += table.at(static_cast<vertex_t>(std::countr_zero(rb)), v);
            if (cost < best) best = cost;
        }
        f[set] = best;
    }

    // Reconstruct one optimal ordering back to front, lowest id on ties.
    std::vector<vertex_t> perm(n2);
    std::uint32_t set = full;
    for (vertex_t slot = n2; slot > 0; --slot) {
        for (std::uint32_t bits = set; bits != 0; bits &= bits - 1) {
            const vertex_t v = static_cast<vertex_t>(std::countr_zero(bits));
            const std::uint32_t rest = set & ~(1u << v);
            crossing_t cost = f[rest];
            for (std::uint32_t rb = rest; rb != 0; rb &= rb - 1)
                cost += table.at(static_cast<vertex_t>(std::countr_zero(rb)), v);
            if (cost == f[set]) {
                perm[slot - 1] = v;
                set = rest;
                break;
            }
        }
    }
    return {f[full], ordering::from_perm(std::move(perm))};
}

/// Full enumeration of all n2! permutations; returns the lexicographically
/// smallest optimal one. Refuses n2 > 9.
inline exact_result brute_force(const cross_table& table) {
    const vertex_t n2 = table.n2();
    if (n2 > brute_force_max_n2)
        throw std::invalid_argument("brute_force supports n2 <= " +
                                    std::to_string(brute_force_max_n2) + ", got " +
                                    std::to_string(n2));
    std::vector<vertex_t> perm(n2);
    std::iota(perm.begin(), perm.end(), vertex_t{0});
    std::vector<vertex_t> best_perm = perm;
    crossing_t best = std::numeric_limits<crossing_t>::max();
    do {
        crossing_t total = 0;
        for (vertex_t i = 0; i < n2; ++i)
            for (vertex_t j = i + 1; j < n2; ++j) total += table.at(perm[i], perm[j]);
        if (total < best) {
            best = total;
            best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {best, ordering::from_perm(std::move(best_perm))};
}

}  // namespace obcm

#endif
