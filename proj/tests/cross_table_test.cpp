#include <catch2/catch_amalgamated.hpp>

#include "obcm/cross_table.hpp"
#include "obcm/instance.hpp"
#include "oracles.hpp"

using namespace obcm;
using test::crossings_by_pairs;

namespace {

bipartite_instance random_instance(std::uint64_t seed, vertex_t max_n1 = 12,
                                   vertex_t max_n2 = 8) {
    rng gen(seed_t{seed});
    const vertex_t n1 = 1 + static_cast<vertex_t>(gen.next_below(max_n1));
    const vertex_t n2 = 1 + static_cast<vertex_t>(gen.next_below(max_n2));
    const double p = 0.1 + 0.8 * gen.next_double();
    return generate_random(n1, n2, p, seed_t{seed * 2654435761ULL + 17});
}

}  // namespace

TEST_CASE("cross table entries on the tiny fixtures") {
    const auto e1 = build_cross_table(test::make_e1());
    CHECK(e1.at(0, 1) == 1);
    CHECK(e1.at(1, 0) == 1);
    CHECK(e1.at(0, 0) == 0);

    const auto k22 = build_cross_table(test::make_k22());
    CHECK(k22.at(0, 1) == 1);
    CHECK(k22.at(1, 0) == 1);
    // identity: deg*deg - common = 2*2 - 2 = 2 = c_uv + c_vu
    CHECK(k22.at(0, 1) + k22.at(1, 0) == 2);

    const auto e2 = build_cross_table(test::make_e2());
    CHECK(e2.at(0, 1) == 2);
    CHECK(e2.at(1, 0) == 0);
    CHECK(e2.at(0, 2) == 2);
    CHECK(e2.at(2, 0) == 0);
    CHECK(e2.at(1, 2) == 1);
    CHECK(e2.at(2, 1) == 0);
}

TEST_CASE("degree-0 vertices have all-zero rows and columns") {
    const bipartite_instance inst(3, 3, {{0, 0}, {0, 2}, {2, 1}});  // vertex 1 isolated
    const auto table = build_cross_table(inst);
    for (vertex_t v = 0; v < 3; ++v) {
        CHECK(table.at(1, v) == 0);
        CHECK(table.at(v, 1) == 0);
    }
}

TEST_CASE("symmetry identity c_uv + c_vu = deg(u)deg(v) - |N(u) cap N(v)|") {
    for (std::uint64_t s = 1; s <= 60; ++s) {
        const auto inst = random_instance(s);
        const auto table = build_cross_table(inst);
        for (vertex_t u = 0; u < inst.n2(); ++u) {
            for (vertex_t v = u + 1; v < inst.n2(); ++v) {
                const auto& nu = inst.neighbors(u);
                const auto& nv = inst.neighbors(v);
                std::vector<vertex_t> common;
                std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(),
                                      std::back_inserter(common));
                const crossing_t expected =
                    static_cast<crossing_t>(nu.size()) * static_cast<crossing_t>(nv.size()) -
                    static_cast<crossing_t>(common.size());
                CHECK(table.at(u, v) + table.at(v, u) == expected);
                CHECK(table.at(u, v) <= static_cast<crossing_t>(nu.size() * nv.size()));
            }
        }
    }
}

TEST_CASE("crossings_of on the E2 fixture") {
    const auto table = build_cross_table(test::make_e2());
    CHECK(crossings_of(table, ordering::from_perm({0, 1, 2})) == 5);
    CHECK(crossings_of(table, ordering::from_perm({2, 1, 0})) == 0);
}

TEST_CASE("crossings are zero with at most one free vertex") {
    const bipartite_instance one(4, 1, {{0, 0}, {0, 3}});
    CHECK(crossings_of(build_cross_table(one), ordering::identity(1)) == 0);
    const bipartite_instance zero(4, 0, {});
    CHECK(crossings_of(build_cross_table(zero), ordering::identity(0)) == 0);
}

TEST_CASE("crossings_of rejects size mismatch") {
    const auto table = build_cross_table(test::make_e2());
    CHECK_THROWS_AS(crossings_of(table, ordering::identity(2)), std::invalid_argument);
}

TEST_CASE("count_crossings_direct on fixtures") {
    const auto e2 = test::make_e2();
    CHECK(count_crossings_direct(e2, ordering::from_perm({0, 1, 2})) == 5);
    CHECK(count_crossings_direct(e2, ordering::from_perm({2, 1, 0})) == 0);

    const bipartite_instance empty(5, 4, {});
    CHECK(count_crossings_direct(empty, ordering::identity(4)) == 0);

    // K_{3,3}: every ordering has 9 crossings
    const auto k33 = test::make_k33();
    std::vector<vertex_t> perm = {0, 1, 2};
    do {
        CHECK(count_crossings_direct(k33, ordering::from_perm(perm)) == 9);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("both counting routes agree with the edge-pair oracle") {
    for (std::uint64_t s = 1; s <= 300; ++s) {
        const auto inst = random_instance(s, 14, 10);
        const auto table = build_cross_table(inst);
        const auto ord = random_ordering(inst.n2(), seed_t{s + 5000});
        const crossing_t expected = crossings_by_pairs(inst, ord);
        CHECK(crossings_of(table, ord) == expected);
        CHECK(count_crossings_direct(inst, ord) == expected);
    }
}

TEST_CASE("frozen move deltas on E2") {
    const auto inst = test::make_e2();
    const auto table = build_cross_table(inst);

    SECTION("adjacent swap") {
        CHECK(delta_adjacent_swap(table, ordering::from_perm({1, 2, 0}), 0) == -1);
        CHECK(delta_adjacent_swap(table, ordering::from_perm({0, 1, 2}), 0) == -2);
        const auto k22 = build_cross_table(test::make_k22());
        CHECK(delta_adjacent_swap(k22, ordering::identity(2), 0) == 0);
        CHECK_THROWS_AS(delta_adjacent_swap(table, ordering::identity(3), 2),
                        std::out_of_range);
    }
    SECTION("exchange") {
        const ordering ord = ordering::from_perm({0, 1, 2});
        CHECK(delta_exchange(table, ord, 0, 2) == -5);
        CHECK(delta_exchange(table, ord, 0, 1) == delta_adjacent_swap(table, ord, 0));
        const auto k22 = build_cross_table(test::make_k22());
        CHECK(delta_exchange(k22, ordering::identity(2), 0, 1) == 0);
        CHECK_THROWS_AS(delta_exchange(table, ord, 1, 1), std::out_of_range);
    }
    SECTION("jump") {
        const ordering ord = ordering::from_perm({0, 1, 2});
        CHECK(delta_jump(table, ord, 0, 2) == -4);
        CHECK(delta_jump(table, ord, 1, 1) == 0);
        CHECK(delta_jump(table, ord, 2, 0) == -3);
    }
}

TEST_CASE("jump_delta_scan on E2 matches the recount-verified values") {
    const auto table = build_cross_table(test::make_e2());
    const ordering ord = ordering::from_perm({0, 1, 2});
    CHECK(jump_delta_scan(table, ord, 0) == std::vector<crossing_t>{0, -2, -4});
    CHECK(jump_delta_scan(table, ord, 1) == std::vector<crossing_t>{-2, 0, -1});
    CHECK(jump_delta_scan(table, ord, 2) == std::vector<crossing_t>{-3, -1, 0});
}

TEST_CASE("every delta equals the recount difference, exhaustively") {
    for (std::uint64_t s = 1; s <= 40; ++s) {
        const auto inst = random_instance(s, 10, 8);
        const auto table = build_cross_table(inst);
        const vertex_t n2 = inst.n2();
        const ordering ord = random_ordering(n2, seed_t{s + 900});
        const crossing_t base = count_crossings_direct(inst, ord);

        for (vertex_t i = 0; i + 1 < n2; ++i) {
            ordering moved = ord;
            moved.apply_exchange(i, i + 1);
            CHECK(delta_adjacent_swap(table, ord, i) ==
                  count_crossings_direct(inst, moved) - base);
        }
        for (vertex_t i = 0; i < n2; ++i) {
            for (vertex_t j = i + 1; j < n2; ++j) {
                ordering moved = ord;
                moved.apply_exchange(i, j);
                CHECK(delta_exchange(table, ord, i, j) ==
                      count_crossings_direct(inst, moved) - base);
            }
        }
        for (vertex_t i = 0; i < n2; ++i) {
            const auto scan = jump_delta_scan(table, ord, i);
            for (vertex_t j = 0; j < n2; ++j) {
                ordering moved = ord;
                moved.apply_jump(i, j);
                const crossing_t recount = count_crossings_direct(inst, moved) - base;
                CHECK(delta_jump(table, ord, i, j) == recount);
                CHECK(scan[j] == recount);
            }
        }
    }
}

TEST_CASE("pairwise lower bound") {
    CHECK(pairwise_lower_bound(build_cross_table(test::make_e2())) == 0);
    CHECK(pairwise_lower_bound(build_cross_table(test::make_k33())) == 9);
    CHECK(pairwise_lower_bound(build_cross_table(bipartite_instance(3, 3, {}))) == 0);

    for (std::uint64_t s = 1; s <= 40; ++s) {
        const auto inst = random_instance(s, 10, 7);
        CHECK(pairwise_lower_bound(build_cross_table(inst)) <=
              test::optimum_by_enumeration(inst));
    }
}

TEST_CASE("build_ops respects the merge-step bound") {
    for (std::uint64_t s = 1; s <= 60; ++s) {
        const auto inst = random_instance(s, 20, 16);
        const auto table = build_cross_table(inst);
        const vertex_t n2 = inst.n2();
        std::uint64_t degree_pair_sum = 0;
        for (vertex_t u = 0; u < n2; ++u)
            for (vertex_t v = u + 1; v < n2; ++v)
                degree_pair_sum += inst.degree(u) + inst.degree(v);
        CHECK(table.build_ops() <=
              static_cast<std::uint64_t>(n2) * n2 + degree_pair_sum);
    }
}

TEST_CASE("delta op counters count the stated work") {
    const auto table = build_cross_table(test::make_e2());
    const ordering ord = ordering::from_perm({0, 1, 2});
    std::uint64_t ops = 0;
    delta_adjacent_swap(table, ord, 0, &ops);
    CHECK(ops == 1);
    ops = 0;
    delta_exchange(table, ord, 0, 2, &ops);
    CHECK(ops == 3);  // endpoint pair + two per middle element
    ops = 0;
    delta_jump(table, ord, 0, 2, &ops);
    CHECK(ops == 2);
    ops = 0;
    jump_delta_scan(table, ord, 1, &ops);
    CHECK(ops == 2);  // n2 - 1 accumulations
}
