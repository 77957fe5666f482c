#include <stdexcept>
#include <random>

#include "doctest.h"
#include "msd/grid.hpp"

using namespace msd;

TEST_CASE("square grid structure") {
    GridCode grid = build_grid_code({6, 6});
    CHECK(grid.site_count == 36);
    CHECK(grid.encoded_count == 4);
    CHECK(grid.levels.size() == 2);
    CHECK(grid.levels[0].blocks.size() == 6);
    CHECK(grid.levels[1].blocks.size() == 2);
    // Matched-pair check structure: every block carries exactly two checks
    // with supports of size 4 and n-2 (both even).
    for (const GridLevel& level : grid.levels) {
        for (const GridBlock& block : level.blocks) {
            CHECK(block.check1.popcount() == 4);
            CHECK(block.check2.popcount() == level.n - 2);
        }
    }
}

TEST_CASE("10x10 grid blocks") {
    GridCode grid = build_grid_code({10, 10});
    CHECK(grid.encoded_count == 36);
    CHECK(grid.levels[0].blocks.size() == 10);
    CHECK(grid.levels[1].blocks.size() == 6);
}

TEST_CASE("rectangular grid") {
    GridCode grid = build_grid_code({6, 8});
    CHECK(grid.site_count == 48);
    CHECK(grid.encoded_count == 8);
    CHECK(grid.levels[0].blocks.size() == 8);  // lines of length 6, one per second coordinate
    CHECK(grid.levels[1].blocks.size() == 2);
}

TEST_CASE("bad dims") {
    CHECK_THROWS_AS(build_grid_code({4, 6}), std::invalid_argument);
    CHECK_THROWS_AS(build_grid_code({7}), std::invalid_argument);
    CHECK_THROWS_AS(build_grid_code({}), std::invalid_argument);
    CHECK_THROWS_AS(build_grid_code({6, 6, 6, 6, 6}), std::invalid_argument);
}

TEST_CASE("one-level syndrome examples") {
    GridCode h6 = build_grid_code({6});

    HierarchicalSyndrome zero = hierarchical_syndrome(h6, Bits(6));
    CHECK_FALSE(zero.detected);
    CHECK_FALSE(zero.logical_y_bits.any());

    // Y on both index sites: undetected, both logical bits set.
    HierarchicalSyndrome pair = hierarchical_syndrome(h6, Bits::from_indices(6, {4, 5}));
    CHECK_FALSE(pair.detected);
    CHECK(pair.logical_y_bits.indices() == std::vector<int>{0, 1});

    // Preamble pairs act as the product of logical Y on every encoded qubit.
    for (auto sites : {std::vector<int>{0, 1}, std::vector<int>{2, 3}}) {
        HierarchicalSyndrome pre = hierarchical_syndrome(h6, Bits::from_indices(6, sites));
        CHECK_FALSE(pre.detected);
        CHECK(pre.logical_y_bits.popcount() == 2);
    }

    // One preamble plus one index site is always detected.
    HierarchicalSyndrome split = hierarchical_syndrome(h6, Bits::from_indices(6, {0, 4}));
    CHECK(split.detected);
    CHECK(split.level == 1);
}

TEST_CASE("column pair detected at level 2") {
    GridCode grid = build_grid_code({6, 6});
    // Sites (0,c),(1,c): a preamble pair within one first-level line.
    for (int c = 0; c < 6; ++c) {
        Bits pattern(36);
        pattern.set(grid.site_index({0, c}));
        pattern.set(grid.site_index({1, c}));
        HierarchicalSyndrome syn = hierarchical_syndrome(grid, pattern);
        CHECK(syn.detected);
        CHECK(syn.level == 2);
    }
}

TEST_CASE("y distance") {
    CHECK(y_distance(build_grid_code({6}), 4) == 2);
    CHECK(y_distance(build_grid_code({6, 6}), 4) == 4);
    CHECK(y_distance(build_grid_code({6, 8}), 4) == 4);
    CHECK_THROWS_AS(y_distance(build_grid_code({6}), 1), std::invalid_argument);
}

TEST_CASE("weight-2 undetected nontrivial patterns are exactly the known set") {
    for (int n : {6, 8, 10}) {
        GridCode grid = build_grid_code({n});
        int k = n - 4;
        int count = 0;
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                HierarchicalSyndrome syn =
                    hierarchical_syndrome(grid, Bits::from_indices(n, {a, b}));
                if (!syn.detected && syn.logical_y_bits.any()) {
                    ++count;
                    bool preamble_pair = (a == 0 && b == 1) || (a == 2 && b == 3);
                    bool index_pair = a >= 4 && b >= 4;
                    CHECK((preamble_pair || index_pair));
                }
            }
        }
        CHECK(count == 2 + k * (k - 1) / 2);
    }
}

TEST_CASE("syndrome invariant under stabilizer lifts") {
    GridCode grid = build_grid_code({6, 6});
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 300; ++trial) {
        Bits pattern(grid.site_count);
        for (int i = 0; i < grid.site_count; ++i)
            if (rng() % 4 == 0) pattern.set(i);
        Bits lift(grid.site_count);
        for (const Bits& check : grid.lifted_checks)
            if (rng() & 1) lift ^= check;

        HierarchicalSyndrome s1 = hierarchical_syndrome(grid, pattern);
        HierarchicalSyndrome s2 = hierarchical_syndrome(grid, pattern ^ lift);
        CHECK(s1.detected == s2.detected);
        CHECK(s1.level == s2.level);
        if (!s1.detected) CHECK(s1.logical_y_bits == s2.logical_y_bits);
    }
}

TEST_CASE("lifted logical supports agree with the hierarchical reduction") {
    GridCode grid = build_grid_code({6, 6});
    std::mt19937 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        Bits pattern(grid.site_count);
        for (int i = 0; i < grid.site_count; ++i)
            if (rng() % 3 == 0) pattern.set(i);
        HierarchicalSyndrome syn = hierarchical_syndrome(grid, pattern);
        if (syn.detected) continue;
        for (int q = 0; q < grid.encoded_count; ++q)
            CHECK(syn.logical_y_bits.get(q) ==
                  pattern.parity_and(grid.lifted_logical_supports[static_cast<size_t>(q)]));
    }
}
