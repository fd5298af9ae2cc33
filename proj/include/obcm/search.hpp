#ifndef OBCM_SEARCH_HPP
#define OBCM_SEARCH_HPP

// Randomised solvers over the free-layer permutation.
//
// run_search is the elitist (1+1) loop: per generation it applies k
// elementary moves of one operator (k = 1 for RLS, k = 1 + Poisson(1) for
// the EA) and accepts the offspring iff its crossing number did not
// increase. run_scanning_rls replaces the random jump by a scan of the
// whole jump neighborhood, taking the first / a uniformly random / the
// best acceptable jump (JFIRLS / JRIRLS / JSRLS).
//
// Stagnation counts generations without strict improvement; plateau moves
// (delta 0) are accepted but do not reset the counter. Identity jumps are
// never considered acceptable by the scanning variants.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "obcm/cross_table.hpp"
#include "obcm/instance.hpp"
#include "obcm/rng.hpp"

namespace obcm {

enum class mutation_op { swap, exchange, jump };
enum class strength_rule { constant_one, poisson };
enum class scan_strategy { first, random, best };

struct mutation_config {
    mutation_op op{mutation_op::jump};
    strength_rule strength{strength_rule::constant_one};
};

inline std::string algorithm_name(const mutation_config& config) {
    std::string name = config.strength == strength_rule::constant_one ? "rls-" : "ea-";
    switch (config.op) {
        case mutation_op::swap: return name + "swap";
        case mutation_op::exchange: return name + "exchange";
        case mutation_op::jump: return name + "jump";
    }
    return name + "?";
}

inline std::string algorithm_name(scan_strategy strategy) {
    switch (strategy) {
        case scan_strategy::first: return "jfirls";
        case scan_strategy::random: return "jrirls";
        case scan_strategy::best: return "jsrls";
    }
    return "?";
}

/// ceil(n2^1.5), computed in integer arithmetic.
inline std::uint64_t default_stagnation_limit(vertex_t n2) {
    const std::uint64_t cube = static_cast<std::uint64_t>(n2) * n2 * n2;
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(cube)));
    while (r * r > cube) --r;
    while ((r + 1) * (r + 1) <= cube) ++r;
    return r * r == cube ? r : r + 1;
}

struct stop_rule {
    std::uint64_t stagnation_limit{0};
    std::uint64_t max_generations{UINT64_MAX};
    std::optional<crossing_t> target;

    static stop_rule stagnation(std::uint64_t limit, std::uint64_t cap = UINT64_MAX) {
        return {limit, cap, std::nullopt};
    }
    /// The paper-style rule: stop after ceil(n2^exponent) generations
    /// without strict improvement.
    static stop_rule stagnation_power(vertex_t n2, double exponent = 1.5,
                                      std::uint64_t cap = UINT64_MAX) {
        if (exponent == 1.5) return {default_stagnation_limit(n2), cap, std::nullopt};
        return {static_cast<std::uint64_t>(
                    std::ceil(std::pow(static_cast<double>(n2), exponent))),
                cap, std::nullopt};
    }
    static stop_rule budget(std::uint64_t generations) {
        return {UINT64_MAX, generations, std::nullopt};
    }
};

struct improvement_event {
    std::uint64_t generation;
    crossing_t crossings;
    friend bool operator==(const improvement_event&, const improvement_event&) = default;
};

/// Per-run record. events always starts with (0, start crossings) and is
/// strictly decreasing in crossings afterwards. Durations are wall clock
/// and are the only fields excluded from the reproducibility contract.
struct run_trace {
    std::string algorithm;
    seed_t seed{};
    std::vector<improvement_event> events;
    ordering final_ordering;
    crossing_t final_crossings{0};
    std::uint64_t generations{0};
    std::uint64_t evaluations{0};
    std::uint64_t delta_ops{0};
    double preprocess_seconds{0.0};
    double search_seconds{0.0};
};

inline std::uint32_t sample_strength(const mutation_config& config, rng& gen) {
    if (config.strength == strength_rule::constant_one) return 1;
    return 1 + gen.next_poisson_one();
}

/// Applies k uniformly random elementary moves of the given operator to ord
/// in place and returns the exact crossing-number change (sum of per-move
/// deltas). Orderings with fewer than two elements are left unchanged.
inline crossing_t mutate_in_place(ordering& ord, const cross_table& table, mutation_op op,
                                  std::uint32_t k, rng& gen,
                                  std::uint64_t* delta_ops = nullptr) {
    const vertex_t n2 = ord.size();
    if (n2 < 2) return 0;
    crossing_t delta = 0;
    for (std::uint32_t step = 0; step < k; ++step) {
        switch (op) {
            case mutation_op::swap: {
                const vertex_t i = static_cast<vertex_t>(gen.next_below(n2 - 1));
                delta += delta_adjacent_swap(table, ord, i, delta_ops);
                ord.apply_exchange(i, i + 1);
                break;
            }
            case mutation_op::exchange: {
                vertex_t i = static_cast<vertex_t>(gen.next_below(n2));
                vertex_t j = static_cast<vertex_t>(gen.next_below(n2 - 1));
                if (j >= i) ++j;  // uniform unordered pair
                if (i > j) std::swap(i, j);
                delta += delta_exchange(table, ord, i, j, delta_ops);
                ord.apply_exchange(i, j);
                break;
            }
            case mutation_op::jump: {
                // j may equal i: the operator is uniform over all n2^2 pairs.
                const vertex_t i = static_cast<vertex_t>(gen.next_below(n2));
                const vertex_t j = static_cast<vertex_t>(gen.next_below(n2));
                delta += delta_jump(table, ord, i, j, delta_ops);
                ord.apply_jump(i, j);
                break;
            }
        }
    }
    return delta;
}

inline std::pair<ordering, crossing_t> mutate(const ordering& ord, const cross_table& table,
                                              mutation_op op, std::uint32_t k, rng& gen,
                                              std::uint64_t* delta_ops = nullptr) {
    ordering copy = ord;
    const crossing_t delta = mutate_in_place(copy, table, op, k, gen, delta_ops);
    return {std::move(copy), delta};
}

namespace detail {

struct search_state {
    ordering current;
    crossing_t crossings;
    run_trace trace;
    std::uint64_t stagnation{0};

    search_state(const cross_table& table, const ordering& start, std::string name, seed_t seed)
        : current(start), crossings(crossings_of(table, start)) {
        trace.algorithm = std::move(name);
        trace.seed = seed;
        trace.evaluations = 1;
        trace.events.push_back({0, crossings});
    }

    bool should_continue(const stop_rule& stop) const {
        if (stagnation >= stop.stagnation_limit) return false;
        if (trace.generations >= stop.max_generations) return false;
        if (stop.target && crossings <= *stop.target) return false;
        return true;
    }

    // Bookkeeping after one generation; applied_delta empty means no move.
    void account(std::optional<crossing_t> applied_delta) {
        ++trace.evaluations;
        if (applied_delta && *applied_delta < 0) {
            crossings += *applied_delta;
            trace.events.push_back({trace.generations, crossings});
            stagnation = 0;
        } else {
            ++stagnation;
        }
    }

    run_trace finish(double seconds) {
        trace.final_ordering = std::move(current);
        trace.final_crossings = crossings;
        trace.search_seconds = seconds;
        return std::move(trace);
    }
};

}  // namespace detail

/// Elitist (1+1) search; deterministic given (table, config, stop, seed,
/// start) up to the wall-clock fields of the trace.
inline run_trace run_search(const cross_table& table, const mutation_config& config,
                            const stop_rule& stop, seed_t seed, const ordering& start) {
    const auto t0 = std::chrono::steady_clock::now();
    rng gen(seed);
    detail::search_state state(table, start, algorithm_name(config), seed);
    ordering candidate = state.current;
    while (state.should_continue(stop)) {
        ++state.trace.generations;
        const std::uint32_t k = sample_strength(config, gen);
        candidate = state.current;
        const crossing_t delta =
            mutate_in_place(candidate, table, config.op, k, gen, &state.trace.delta_ops);
        if (delta <= 0) {
            std::swap(state.current, candidate);
            state.account(delta);
        } else {
            state.account(std::nullopt);
        }
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;
    return state.finish(elapsed.count());
}

/// Scanning RLS over the jump neighborhood. Elements are visited in a
/// freshly shuffled order each generation; identity jumps are excluded.
/// Per-generation cost is at most n2^2 delta operations.
inline run_trace run_scanning_rls(const cross_table& table, scan_strategy strategy,
                                  const stop_rule& stop, seed_t seed, const ordering& start) {
    const auto t0 = std::chrono::steady_clock::now();
    rng gen(seed);
    detail::search_state state(table, start, algorithm_name(strategy), seed);
    const vertex_t n2 = table.n2();

    std::vector<vertex_t> visit(n2);
    std::iota(visit.begin(), visit.end(), vertex_t{0});
    std::vector<crossing_t> deltas(n2);
    struct move_t {
        vertex_t from, to;
        crossing_t delta;
    };
    std::vector<move_t> acceptable;

    while (state.should_continue(stop)) {
        ++state.trace.generations;
        gen.shuffle(visit);
        std::optional<move_t> chosen;

        if (strategy == scan_strategy::first) {
            // Outward from each element's position, right before left at
            // each distance; stop at the first non-increasing jump.
            for (vertex_t v : visit) {
                const vertex_t i = state.current.position(v);
                const vertex_t u = v;
                crossing_t right_run = 0, left_run = 0;
                for (vertex_t dist = 1; dist < n2 && !chosen; ++dist) {
                    if (i + dist < n2) {
                        const vertex_t w = state.current.at(i + dist);
                        right_run += table.at(w, u) - table.at(u, w);
                        ++state.trace.delta_ops;
                        if (right_run <= 0) chosen = move_t{i, static_cast<vertex_t>(i + dist), right_run};
                    }
                    if (!chosen && dist <= i) {
                        const vertex_t w = state.current.at(i - dist);
                        left_run += table.at(u, w) - table.at(w, u);
                        ++state.trace.delta_ops;
                        if (left_run <= 0) chosen = move_t{i, static_cast<vertex_t>(i - dist), left_run};
                    }
                }
                if (chosen) break;
            }
        } else {
            acceptable.clear();
            crossing_t best_delta = 1;  // only deltas <= 0 are acceptable
            for (vertex_t v : visit) {
                const vertex_t i = state.current.position(v);
                jump_delta_scan(table, state.current, i, std::span<crossing_t>(deltas),
                                &state.trace.delta_ops);
                for (vertex_t j = 0; j < n2; ++j) {
                    if (j == i || deltas[j] > 0) continue;
                    if (strategy == scan_strategy::random) {
                        acceptable.push_back({i, j, deltas[j]});
                    } else if (deltas[j] < best_delta) {
                        best_delta = deltas[j];
                        acceptable.clear();
                        acceptable.push_back({i, j, deltas[j]});
                    } else if (deltas[j] == best_delta) {
                        acceptable.push_back({i, j, deltas[j]});
                    }
                }
            }
            if (!acceptable.empty())
                chosen = acceptable[gen.next_below(acceptable.size())];
        }

        if (chosen) {
            state.current.apply_jump(chosen->from, chosen->to);
            state.account(chosen->delta);
        } else {
            state.account(std::nullopt);
        }
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;
    return state.finish(elapsed.count());
}

}  // namespace obcm

#endif
