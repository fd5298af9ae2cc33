#ifndef OBCM_CROSS_TABLE_HPP
#define OBCM_CROSS_TABLE_HPP

// Crossing matrix and incremental move deltas.
//
// c[u][v] is the number of edge pairs ((u,a),(v,b)) with fixed positions
// a > b, i.e. the crossings charged to the pair when u is placed before v.
// The total crossing number of an ordering pi is the sum of c over all
// ordered pairs consistent with pi. Swap, exchange and jump deltas only
// touch table entries of the elements passed over, which is what makes the
// local-search generations cheap.
//
// Instrumentation: the table records the merge steps spent in construction
// (build_ops), and every delta routine can report the number of elementary
// table-difference accumulations it performed. Complexity contracts are
// tested against these counters, never against wall clock.

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "obcm/instance.hpp"

namespace obcm {

using crossing_t = std::int64_t;

/// Dense n2 x n2 crossing matrix. Immutable after build; safe to share
/// across concurrent runs.
class cross_table {
   public:
    cross_table() = default;
    cross_table(vertex_t n2, std::vector<crossing_t> entries, std::uint64_t build_ops)
        : n2_(n2), c_(std::move(entries)), build_ops_(build_ops) {}

    vertex_t n2() const { return n2_; }

    /// c[u][v]: crossings charged to the pair when u precedes v.
    crossing_t at(vertex_t u, vertex_t v) const {
        return c_[static_cast<std::size_t>(u) * n2_ + v];
    }

    /// Elementary merge steps spent building the table.
    std::uint64_t build_ops() const { return build_ops_; }

   private:
    vertex_t n2_{0};
    std::vector<crossing_t> c_;
    std::uint64_t build_ops_{0};
};

/// Builds the crossing matrix by a two-pointer merge over the sorted
/// adjacency lists of every pair, counting (a in N(u), b in N(v), a > b)
/// in one pass per pair.
inline cross_table build_cross_table(const bipartite_instance& inst) {
    const vertex_t n2 = inst.n2();
    std::vector<crossing_t> c(static_cast<std::size_t>(n2) * n2, 0);
    std::uint64_t ops = 0;
    for (vertex_t u = 0; u < n2; ++u) {
        const auto& nu = inst.neighbors(u);
        for (vertex_t v = u + 1; v < n2; ++v) {
            const auto& nv = inst.neighbors(v);
            ++ops;
            crossing_t cuv = 0;  // pairs with a > b
            crossing_t cvu = 0;  // pairs with a < b
            std::size_t i = 0, j = 0;
            while (i < nu.size() && j < nv.size()) {
                ++ops;
                if (nu[i] < nv[j]) {
                    // nu[i] precedes all remaining nv entries
                    cvu += static_cast<crossing_t>(nv.size() - j);
                    ++i;
                } else if (nu[i] > nv[j]) {
                    cuv += static_cast<crossing_t>(nu.size() - i);
                    ++j;
                } else {
                    // common neighbor: crosses nothing on either side of it
                    cvu += static_cast<crossing_t>(nv.size() - j - 1);
                    cuv += static_cast<crossing_t>(nu.size() - i - 1);
                    ++i;
                    ++j;
                }
            }
            c[static_cast<std::size_t>(u) * n2 + v] = cuv;
            c[static_cast<std::size_t>(v) * n2 + u] = cvu;
        }
    }
    return cross_table(n2, std::move(c), ops);
}

/// Crossing number of ord via the table: sum of c[pi(i)][pi(j)] over i < j.
inline crossing_t crossings_of(const cross_table& table, const ordering& ord) {
    if (ord.size() != table.n2())
        throw std::invalid_argument("ordering size does not match cross table");
    const vertex_t n2 = table.n2();
    crossing_t total = 0;
    for (vertex_t i = 0; i < n2; ++i)
        for (vertex_t j = i + 1; j < n2; ++j) total += table.at(ord.at(i), ord.at(j));
    return total;
}

namespace detail {

// Merge-sort inversion counting on values[lo, hi).
inline crossing_t count_inversions(std::vector<vertex_t>& values, std::vector<vertex_t>& scratch,
                                   std::size_t lo, std::size_t hi) {
    if (hi - lo <= 1) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    crossing_t inv = count_inversions(values, scratch, lo, mid) +
                     count_inversions(values, scratch, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (values[i] <= values[j]) {
            scratch[k++] = values[i++];
        } else {
            inv += static_cast<crossing_t>(mid - i);
            scratch[k++] = values[j++];
        }
    }
    while (i < mid) scratch[k++] = values[i++];
    while (j < hi) scratch[k++] = values[j++];
    for (std::size_t t = lo; t < hi; ++t) values[t] = scratch[t];
    return inv;
}

}  // namespace detail

/// Counts crossings without the cross table: edges are listed as
/// (fixed_id, position of free endpoint), sorted by fixed id with ties
/// broken by position, and the strict inversions of the position sequence
/// are counted by merge sort. Independent of build_cross_table.
inline crossing_t count_crossings_direct(const bipartite_instance& inst, const ordering& ord) {
    if (ord.size() != inst.n2())
        throw std::invalid_argument("ordering size does not match instance");
    std::vector<std::pair<vertex_t, vertex_t>> keyed;  // (fixed_id, position)
    keyed.reserve(inst.m());
    for (const edge_t& e : inst.edges()) keyed.push_back({e.fixed_id, ord.position(e.free_id)});
    std::sort(keyed.begin(), keyed.end());
    std::vector<vertex_t> positions;
    positions.reserve(keyed.size());
    for (const auto& [fixed, pos] : keyed) positions.push_back(pos);
    std::vector<vertex_t> scratch(positions.size());
    return detail::count_inversions(positions, scratch, 0, positions.size());
}

/// Crossing-number change of swapping the adjacent positions i and i+1. O(1).
inline crossing_t delta_adjacent_swap(const cross_table& table, const ordering& ord, vertex_t i,
                                      std::uint64_t* delta_ops = nullptr) {
    if (i + 1 >= ord.size()) throw std::out_of_range("adjacent swap position out of range");
    if (delta_ops) *delta_ops += 1;
    const vertex_t u = ord.at(i), v = ord.at(i + 1);
    return table.at(v, u) - table.at(u, v);
}

/// Crossing-number change of exchanging positions i < j. O(j - i).
inline crossing_t delta_exchange(const cross_table& table, const ordering& ord, vertex_t i,
                                 vertex_t j, std::uint64_t* delta_ops = nullptr) {
    if (i >= j || j >= ord.size()) throw std::out_of_range("exchange positions out of range");
    const vertex_t u = ord.at(i), v = ord.at(j);
    crossing_t delta = table.at(v, u) - table.at(u, v);
    std::uint64_t ops = 1;
    for (vertex_t k = i + 1; k < j; ++k) {
        const vertex_t w = ord.at(k);
        delta += table.at(w, u) - table.at(u, w);
        delta += table.at(v, w) - table.at(w, v);
        ops += 2;
    }
    if (delta_ops) *delta_ops += ops;
    return delta;
}

/// Crossing-number change of jumping the element at position i to position j
/// (intermediates shift by one). O(|i - j|).
inline crossing_t delta_jump(const cross_table& table, const ordering& ord, vertex_t i, vertex_t j,
                             std::uint64_t* delta_ops = nullptr) {
    if (i >= ord.size() || j >= ord.size()) throw std::out_of_range("jump positions out of range");
    const vertex_t u = ord.at(i);
    crossing_t delta = 0;
    std::uint64_t ops = 0;
    if (i < j) {
        for (vertex_t k = i + 1; k <= j; ++k) {
            const vertex_t w = ord.at(k);
            delta += table.at(w, u) - table.at(u, w);
            ++ops;
        }
    } else {
        for (vertex_t k = j; k < i; ++k) {
            const vertex_t w = ord.at(k);
            delta += table.at(u, w) - table.at(w, u);
            ++ops;
        }
    }
    if (delta_ops) *delta_ops += ops;
    return delta;
}

/// Jump deltas from position i to every target position, by prefix sums
/// running outward from i: O(n2) total, not O(n2) per target.
/// out must have size n2; out[i] is always 0.
inline void jump_delta_scan(const cross_table& table, const ordering& ord, vertex_t i,
                            std::span<crossing_t> out, std::uint64_t* delta_ops = nullptr) {
    const vertex_t n2 = ord.size();
    if (i >= n2) throw std::out_of_range("scan position out of range");
    if (out.size() != n2) throw std::invalid_argument("scan output size mismatch");
    const vertex_t u = ord.at(i);
    out[i] = 0;
    crossing_t run = 0;
    for (vertex_t j = i + 1; j < n2; ++j) {
        const vertex_t w = ord.at(j);
        run += table.at(w, u) - table.at(u, w);
        out[j] = run;
    }
    run = 0;
    for (vertex_t j = i; j > 0; --j) {
        const vertex_t w = ord.at(j - 1);
        run += table.at(u, w) - table.at(w, u);
        out[j - 1] = run;
    }
    if (delta_ops && n2 > 0) *delta_ops += n2 - 1;
}

inline std::vector<crossing_t> jump_delta_scan(const cross_table& table, const ordering& ord,
                                               vertex_t i, std::uint64_t* delta_ops = nullptr) {
    std::vector<crossing_t> out(ord.size());
    jump_delta_scan(table, ord, i, std::span<crossing_t>(out), delta_ops);
    return out;
}

/// Sum over unordered pairs of min(c[u][v], c[v][u]); a lower bound on the
/// optimal crossing number (every ordering pays at least the minimum per pair).
inline crossing_t pairwise_lower_bound(const cross_table& table) {
    const vertex_t n2 = table.n2();
    crossing_t bound = 0;
    for (vertex_t u = 0; u < n2; ++u)
        for (vertex_t v = u + 1; v < n2; ++v) bound += std::min(table.at(u, v), table.at(v, u));
    return bound;
}

}  // namespace obcm

#endif
