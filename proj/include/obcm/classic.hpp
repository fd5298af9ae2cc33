#ifndef OBCM_CLASSIC_HPP
#define OBCM_CLASSIC_HPP

// Deterministic baselines: barycenter, median and sifting.
//
// Degree-0 vertices get sort key -1 (placed leftmost); they contribute no
// crossings, the rule only pins the output down. Median uses the left
// median (index floor((deg-1)/2) of the sorted neighbor list), with ties
// broken by the barycenter key and then stably by vertex id.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "obcm/cross_table.hpp"
#include "obcm/instance.hpp"

namespace obcm {

inline ordering barycenter(const bipartite_instance& inst) {
    const vertex_t n2 = inst.n2();
    std::vector<double> key(n2);
    for (vertex_t v = 0; v < n2; ++v) {
        const auto& nv = inst.neighbors(v);
        if (nv.empty()) {
            key[v] = -1.0;
        } else {
            double sum = 0.0;
            for (vertex_t a : nv) sum += a;
            key[v] = sum / static_cast<double>(nv.size());
        }
    }
    std::vector<vertex_t> perm(n2);
    std::iota(perm.begin(), perm.end(), vertex_t{0});
    std::stable_sort(perm.begin(), perm.end(),
                     [&](vertex_t a, vertex_t b) { return key[a] < key[b]; });
    return ordering::from_perm(std::move(perm));
}

inline ordering median(const bipartite_instance& inst) {
    const vertex_t n2 = inst.n2();
    std::vector<double> med(n2), bary(n2);
    for (vertex_t v = 0; v < n2; ++v) {
        const auto& nv = inst.neighbors(v);
        if (nv.empty()) {
            med[v] = -1.0;
            bary[v] = -1.0;
        } else {
            med[v] = nv[(nv.size() - 1) / 2];
            double sum = 0.0;
            for (vertex_t a : nv) sum += a;
            bary[v] = sum / static_cast<double>(nv.size());
        }
    }
    std::vector<vertex_t> perm(n2);
    std::iota(perm.begin(), perm.end(), vertex_t{0});
    std::stable_sort(perm.begin(), perm.end(), [&](vertex_t a, vertex_t b) {
        if (med[a] != med[b]) return med[a] < med[b];
        return bary[a] < bary[b];
    });
    return ordering::from_perm(std::move(perm));
}

/// Sifting: one pass over the free vertices in decreasing degree order
/// (ties by id); each visited vertex is moved to the position of minimum
/// resulting crossings per jump_delta_scan, leftmost minimum on ties
/// (possibly its current position). Crossings never increase.
inline ordering sifting(const bipartite_instance& inst, const cross_table& table, ordering start,
                        std::uint64_t* delta_ops = nullptr) {
    const vertex_t n2 = table.n2();
    if (n2 <= 1) return start;

    std::vector<vertex_t> visit(n2);
    std::iota(visit.begin(), visit.end(), vertex_t{0});
    std::stable_sort(visit.begin(), visit.end(),
                     [&](vertex_t a, vertex_t b) { return inst.degree(a) > inst.degree(b); });

    std::vector<crossing_t> deltas(n2);
    for (vertex_t v : visit) {
        const vertex_t i = start.position(v);
        jump_delta_scan(table, start, i, std::span<crossing_t>(deltas), delta_ops);
        vertex_t best_j = 0;
        for (vertex_t j = 1; j < n2; ++j)
            if (deltas[j] < deltas[best_j]) best_j = j;
        if (best_j != i) start.apply_jump(i, best_j);
    }
    return start;
}

}  // namespace obcm

#endif
